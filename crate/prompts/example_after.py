import pytest

from screed.buffer import EditorBuffer, PromptBuffer
from screed.layout import TabPage, Window


@pytest.fixture
def prompt_buffer():
    return PromptBuffer()


@pytest.fixture
def editor_buffer():
    return EditorBuffer("untitled.txt")


@pytest.fixture
def window(editor_buffer):
    return Window(editor_buffer)


@pytest.fixture
def tab_page(window):
    return TabPage(window)


def test_initial(tab_page):
    assert isinstance(tab_page.active_window, Window)
    assert tab_page.window_count() == 1


def test_vsplit(tab_page, prompt_buffer):
    tab_page.vsplit(prompt_buffer)
    assert tab_page.window_count() == 2

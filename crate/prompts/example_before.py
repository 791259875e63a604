import unittest

from screed.buffer import EditorBuffer, PromptBuffer
from screed.layout import TabPage, Window


class TestTabPage(unittest.TestCase):
    def setUp(self):
        self.prompt_buffer = PromptBuffer()
        self.editor_buffer = EditorBuffer("untitled.txt")
        self.window = Window(self.editor_buffer)
        self.tab_page = TabPage(self.window)

    def test_initial(self):
        self.assertIsInstance(self.tab_page.active_window, Window)
        self.assertEqual(self.tab_page.window_count(), 1)

    def test_vsplit(self):
        self.tab_page.vsplit(self.prompt_buffer)
        self.assertEqual(self.tab_page.window_count(), 2)

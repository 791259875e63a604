"""Text helpers for product listings."""

import re

_WORD = re.compile(r"[A-Za-z0-9']+")


def slugify(title):
    parts = _WORD.findall(title.lower())
    cleaned = [p.replace("'", "") for p in parts]
    return "-".join(p for p in cleaned if p)

def tokenize(text):
    return _WORD.findall(text)

def titlecase(text):
    return " ".join(w[:1].upper() + w[1:].lower() for w in text.split())

def shouting(text):
    letters = [c for c in text if c.isalpha()]
    return bool(letters) and all(c.isupper() for c in letters)

def initials(name):
    return "".join(w[0].upper() for w in name.split() if w)

def wrap(text, width):
    if width <= 0:
        raise ValueError("width must be positive")
    lines, current = [], ""
    for word in text.split():
        if current and len(current) + 1 + len(word) > width:
            lines.append(current)
            current = word
        else:
            current = word if not current else current + " " + word
    if current:
        lines.append(current)
    return lines

"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

import re

from .families import family_word
from .instances import Instance, load_instance

FAMILY_REF = re.compile(r"([wW])(\d+)(?:\^(-?\d+))?")


def check_instance(instance) -> Instance:
    """Accept an Instance, a built-in name, or a path to a JSON config."""
    if isinstance(instance, Instance):
        return instance
    if isinstance(instance, str):
        if instance.endswith(".json"):
            return load_instance(path=instance)
        return load_instance(instance)
    raise TypeError(f"instance must be an Instance, a built-in name or a .json path, not {type(instance).__name__}")


def check_word(model, word) -> tuple:
    """A word given as text (``"A:1 B:1"``), a letter sequence, or an element."""
    if isinstance(word, str):
        return model.parse_word(word)
    if hasattr(word, "word"):
        return tuple(word.word)
    return model.check_word(word)


def check_words(model, X) -> list[tuple]:
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of words, got a single string")
    try:
        items = list(X)
    except TypeError:
        raise TypeError(f"expected a sequence of words, got {type(X).__name__}") from None
    return [check_word(model, w) for w in items]


def resolve_word(inst, text: str) -> tuple:
    """A literal word, or a family reference ``w<i>`` / ``w<i>^n`` (n may be negative)."""
    text = text.strip()
    m = FAMILY_REF.fullmatch(text)
    if m and m.group(1) == "w":
        w = family_word(inst.family, int(m.group(2)))
        n = int(m.group(3) or 1)
        if n < 0:
            w, n = inst.model.inverse_word(w), -n
        return w * n
    return inst.model.parse_word(text)

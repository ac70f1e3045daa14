"""Transcript normalization by longest-match symbol replacement."""
from __future__ import annotations

import unicodedata
from typing import Mapping

# Common symbols in Mandarin prompts and their spoken forms.
DEFAULT_SYMBOLS: dict[str, str] = {
    ">": "大于",
    "<": "小于",
    "=": "等于",
    "@": "艾特",
    "%": "百分之",
    "+": "加",
    "&": "和",
    "#": "井号",
    "*": "星号",
    "°C": "摄氏度",
    "℃": "摄氏度",
}


def normalize_text(text: str, mapping: Mapping[str, str]) -> str:
    """NFC-normalize ``text`` then replace mapping keys, longest match first.

    >>> normalize_text(">>", {">": "X", ">>": "Y"})
    'Y'
    """
    if any(not k for k in mapping):
        raise ValueError("mapping keys must be non-empty")
    text = unicodedata.normalize("NFC", text)
    if not mapping:
        return text
    keys = {unicodedata.normalize("NFC", k): v for k, v in mapping.items()}
    lengths = sorted({len(k) for k in keys}, reverse=True)
    out = []
    i = 0
    while i < len(text):
        for n in lengths:
            rep = keys.get(text[i:i + n])
            if rep is not None:
                out.append(rep)
                i += n
                break
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def load_mapping(path) -> dict[str, str]:
    """Read a mapping from JSON (object) or TSV (``symbol<TAB>replacement``)."""
    import json

    with open(path, encoding="utf-8") as fh:
        raw = fh.read()
    if raw.lstrip().startswith("{"):
        return dict(json.loads(raw))
    mapping = {}
    for line in raw.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition("\t")
        mapping[key] = value
    return mapping

"""Compile short English sentences into sprite animations."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "parse",
    "plan",
    "plan_ir",
    "render",
    "render_frames",
    "validate_assets",
    "default_manifest",
]


def default_manifest() -> str:
    """Manifest used when none is given: $TEXT2ANIM_ASSETS, the packaged pack, then the source tree."""
    env = os.environ.get("TEXT2ANIM_ASSETS")
    if env:
        return env
    packaged = Path(__file__).parent / "data" / "assets" / "manifest.json"
    if packaged.is_file():
        return str(packaged)
    return _core.default_manifest()


def _size(size) -> tuple[int, int]:
    if isinstance(size, str):
        w, _, h = size.lower().partition("x")
        return int(w), int(h)
    w, h = size
    return int(w), int(h)


def parse(sentence: str, noun_phrase: bool = False, lexicon: Optional[str] = None) -> dict:
    return json.loads(_core.parse(sentence, noun_phrase, lexicon))


def plan(sentence: str, lexicon: Optional[str] = None) -> dict:
    return json.loads(_core.plan(sentence, lexicon))


def plan_ir(sentence: str, fps: int = 30, size=(640, 480), assets: Optional[str] = None,
            lexicon: Optional[str] = None) -> dict:
    w, h = _size(size)
    return json.loads(_core.plan_ir(sentence, fps, w, h, assets or default_manifest(), lexicon))


def render(sentence: str, output, format: str = "gif", fps: int = 30, size=(640, 480),
           workers: int = 1, dither: bool = False, assets: Optional[str] = None,
           lexicon: Optional[str] = None) -> dict:
    """Renders to `output`; returns frames, duration_ticks, duration_ms and hash."""
    w, h = _size(size)
    return _core.render(sentence, os.fspath(output), format, fps, w, h, workers, dither,
                        assets or default_manifest(), lexicon)


def render_frames(sentence: str, fps: int = 30, size=(640, 480), workers: int = 1,
                  assets: Optional[str] = None):
    """uint8 array of shape (frames, height, width, 4), RGBA."""
    w, h = _size(size)
    return _core.render_frames(sentence, fps, w, h, workers, assets or default_manifest())


def validate_assets(manifest: Optional[str] = None) -> dict:
    return _core.validate_assets(manifest or default_manifest())

"""Bundled JSON fixtures: reference trees and bijection input/output pairs."""

from __future__ import annotations

import json
from importlib import resources


def load(name: str) -> dict:
    path = resources.files(__package__).joinpath(name)
    return json.loads(path.read_text())

"""Shared list of acceptance result lines, printed by the terminal-summary hook."""

LINES: list[str] = []

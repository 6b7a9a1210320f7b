from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Iterator, NamedTuple, Union

from dissect.winratio.exceptions import ConfigError

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_CONFIG", "CRITICAL"))


class TokenizeError(ConfigError):
    pass


def get_char(line: str, idx: int) -> str:
    """Return the character at index ``idx`` in ``line``, or an empty string outside of its boundaries."""
    char = ""
    if 0 <= idx < len(line):
        char = line[idx]
    return char


def tokenize(line: str) -> Iterator[str]:
    """Yield the whitespace separated tokens of a config line.

    A ``#`` preceded by whitespace (or at the start of the line) starts a comment. Quoted tokens are not supported
    and raise a :class:`TokenizeError`.
    """
    whitespace = {" ", "\t", "\r"}
    quotes = {'"', "'"}
    comment = {"#"}
    eol = {""}
    end_of_list = eol | comment
    end_of_token = whitespace | eol

    token = ""
    idx = 0
    while True:
        char = get_char(line, idx)

        while char in whitespace:
            idx += 1
            char = get_char(line, idx)

        if char in end_of_list:
            break

        if char in quotes:
            raise TokenizeError(f"Found quoted token at index {idx}")

        while char not in end_of_token:
            token += char
            idx += 1
            char = get_char(line, idx)

        if token:
            yield token
            token = ""

        idx += 1


class ConfigLine(NamedTuple):
    lineno: int
    keyword: str
    tokens: list[str]


def read_config_lines(source: Union[str, Path], text: str | None = None) -> Iterator[ConfigLine]:
    """Yield the non-empty lines of a config document as keyword and remaining tokens.

    The document is read from ``source`` unless ``text`` is given, in which case ``source`` only names it in
    diagnostics.
    """
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise ConfigError(f"{source}: cannot read config: {e.strerror}")

    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            tokens = list(tokenize(line))
        except TokenizeError as e:
            raise ConfigError(f"{source}:{lineno}: {e}")

        if not tokens:
            continue

        log.debug("%s:%d: %r", source, lineno, tokens)
        yield ConfigLine(lineno, tokens[0], tokens[1:])


def key_values(tokens: list[str], where: str) -> Iterator[tuple[str, str]]:
    """Yield ``key value`` token pairs, failing with a diagnostic prefixed by ``where`` when a key has no value."""
    it = iter(tokens)
    for key in it:
        value = next(it, None)
        if value is None:
            raise ConfigError(f"{where}.{key}: missing value")
        yield key, value

"""Tokenizer for the UML/P class-diagram language.

Three places in the grammar embed foreign text that the lexer does not
analyse: method and constructor bodies (a brace-balanced block directly
after a parameter list or throws clause) and invariant expressions (the
bracket-balanced text of a ``[...]`` at diagram level). Those come out as a
single ``opaque`` token holding the raw text.

Keywords are recognised by longest match, except between ``<<`` and ``>>``
where every word is an identifier.
"""

from __future__ import annotations

from dataclasses import dataclass

KEYWORDS = frozenset(
    {
        "classdiagram", "class", "interface", "enum", "extends", "implements",
        "association", "aggregation", "composition", "throws", "void", "super",
        "boolean", "byte", "char", "short", "int", "float", "long", "double",
        "public", "private", "protected", "final", "abstract", "local",
        "derived", "readonly", "static",
    }
)

# longest first
PUNCTUATION = (
    "<->", "...", "->", "<-", "--", "<<", ">>", "..",
    "{", "}", "(", ")", "[", "]", "<", ">", ",", ";", ":", ".", "=",
    "+", "-", "#", "/", "?", "&", "*",
)

IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
IDENT_REST = IDENT_START | set("0123456789")
DIGITS = set("0123456789")


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | IDENT | NUMBER | STRING | punct | opaque | EOF
    text: str
    line: int
    column: int
    offset: int

    @property
    def end_offset(self) -> int:
        return self.offset + len(self.text)

    def is_(self, text: str) -> bool:
        return self.kind in ("punct", "keyword") and self.text == text

    def __str__(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[Token] = []
        self.depth = 0
        self.in_stereotype = False
        self.throws_pending = False

    # -- character helpers -------------------------------------------------

    def _advance_to(self, end: int) -> None:
        chunk = self.text[self.pos:end]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += len(chunk)
        self.pos = end

    def _error(self, message: str, line: int | None = None, col: int | None = None):
        raise LexError(message, line or self.line, col or self.col)

    def _skip_trivia(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n\f":
                self._advance_to(self.pos + 1)
            elif text.startswith("//", self.pos):
                end = text.find("\n", self.pos)
                self._advance_to(len(text) if end < 0 else end)
            elif text.startswith("/*", self.pos):
                end = text.find("*/", self.pos + 2)
                if end < 0:
                    self._error("unterminated comment")
                self._advance_to(end + 2)
            else:
                return

    def _emit(self, kind: str, end: int) -> Token:
        tok = Token(kind, self.text[self.pos:end], self.line, self.col, self.pos)
        self._advance_to(end)
        self.tokens.append(tok)
        return tok

    def _prev(self) -> Token | None:
        return self.tokens[-1] if self.tokens else None

    # -- scanners ----------------------------------------------------------

    def _string_end(self, start: int, quote: str) -> int:
        text = self.text
        i = start + 1
        while i < len(text):
            ch = text[i]
            if ch == "\\":
                i += 2
                continue
            if ch == quote:
                return i + 1
            if ch == "\n":
                break
            i += 1
        return -1

    def _balanced_end(self, start: int, open_: str, close: str) -> int:
        """Index just past the delimiter closing the one at ``start``."""
        text = self.text
        depth = 0
        i = start
        while i < len(text):
            ch = text[i]
            if ch in "\"'":
                end = self._string_end(i, ch)
                if end < 0:
                    return -1
                i = end
                continue
            if text.startswith("//", i):
                nl = text.find("\n", i)
                i = len(text) if nl < 0 else nl
                continue
            if text.startswith("/*", i):
                end = text.find("*/", i + 2)
                if end < 0:
                    return -1
                i = end + 2
                continue
            if ch == open_:
                depth += 1
            elif ch == close:
                depth -= 1
                if depth == 0:
                    return i + 1
            i += 1
        return -1

    def _body_position(self) -> bool:
        prev = self._prev()
        if prev is None:
            return False
        if prev.kind == "punct" and prev.text == ")":
            return True
        return self.throws_pending and prev.kind == "IDENT"

    def _invariant_position(self) -> bool:
        prev = self._prev()
        return (
            self.depth == 1
            and prev is not None
            and prev.kind == "punct"
            and prev.text in ("{", "}", ";", ":")
        )

    def run(self) -> list[Token]:
        text = self.text
        while True:
            self._skip_trivia()
            if self.pos >= len(text):
                return self.tokens
            ch = text[self.pos]
            start_line, start_col = self.line, self.col

            if ch in IDENT_START:
                end = self.pos + 1
                while end < len(text) and text[end] in IDENT_REST:
                    end += 1
                word = text[self.pos:end]
                kind = "keyword" if word in KEYWORDS and not self.in_stereotype else "IDENT"
                tok = self._emit(kind, end)
                if tok.kind == "keyword" and word == "throws":
                    self.throws_pending = True
                continue

            if ch in DIGITS:
                end = self.pos + 1
                while end < len(text) and text[end] in DIGITS:
                    end += 1
                self._emit("NUMBER", end)
                continue

            if ch == '"':
                end = self._string_end(self.pos, '"')
                if end < 0:
                    self._error("unterminated string literal")
                self._emit("STRING", end)
                continue

            if ch == "{" and not self.in_stereotype and self._body_position():
                end = self._balanced_end(self.pos, "{", "}")
                if end < 0:
                    self._error("unterminated body block")
                self._emit("opaque", end)
                self.throws_pending = False
                continue

            if ch == "[" and self._invariant_position():
                self._emit("punct", self.pos + 1)
                end = self._balanced_end(self.pos - 1, "[", "]")
                if end < 0:
                    self._error("unterminated invariant expression", start_line, start_col)
                self._emit("opaque", end - 1)
                self._emit("punct", end)
                continue

            for p in PUNCTUATION:
                if text.startswith(p, self.pos):
                    self._emit("punct", self.pos + len(p))
                    if p == "{":
                        self.depth += 1
                        self.throws_pending = False
                    elif p == "}":
                        self.depth -= 1
                    elif p == ";":
                        self.throws_pending = False
                    elif p == "<<":
                        self.in_stereotype = True
                    elif p == ">>":
                        self.in_stereotype = False
                    break
            else:
                self._error(f"unexpected character {ch!r}")


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; whitespace and comments are dropped.

    Raises :class:`LexError` on a character outside the lexical alphabet or
    an unterminated string, comment or embedded block.
    """
    return _Lexer(text).run()

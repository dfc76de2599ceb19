from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import ParseError


# ---- AST ----
@dataclass(frozen=True)
class Letter:
    name: str


@dataclass(frozen=True)
class Loop:
    body: "Wff"


Term = Union[Letter, Loop]
Wff = Tuple[Term, ...]  # concatenation; () is the empty formula

LOOP_SUFFIXES = ("^(w+*)", "^(ω+*)", "^(omega+*)")


def extract_root(body: Wff) -> Wff:
    """Shortest u with body = u^k."""
    n = len(body)
    for d in range(1, n):
        if n % d == 0 and body[:d] * (n // d) == body:
            return body[:d]
    return body


def make_loop(body: Wff) -> Loop:
    if not body:
        raise ValueError("Loop body must not be empty")
    return Loop(body=extract_root(tuple(body)))


# ---- Parsing ----
_TOKEN = re.compile(r"\s+|;|\(|\)|\^\((?:w|ω|omega)\+\*\)|[^\s();^]+")


def _tokens(text: str) -> List[Tuple[str, int]]:
    out: List[Tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", position=pos)
        tok = m.group(0)
        if not tok.isspace() and tok != ";":
            out.append((tok, pos))
        pos = m.end()
    return out


def wff_parse(text: str) -> Wff:
    """
    Parse `a^(w+*) ; b ; (b a^(w+*))^(w+*)`.

    - whitespace and `;` separate terms
    - `(expr)` without a loop suffix is inlined
    - loop bodies are replaced by their roots
    """
    toks = _tokens(text)
    pos = 0

    def expr(stop_at_paren: bool) -> List[Term]:
        nonlocal pos
        terms: List[Term] = []
        while pos < len(toks):
            tok, at = toks[pos]
            if tok == ")":
                if not stop_at_paren:
                    raise ParseError("Unbalanced ')'", position=at)
                return terms
            if tok.startswith("^"):
                raise ParseError("Loop suffix without a body", position=at)
            pos += 1
            if tok == "(":
                inner = expr(True)
                if pos >= len(toks):
                    raise ParseError("Missing ')'", position=len(text))
                pos += 1
                if not inner:
                    raise ParseError("Empty parentheses", position=at)
                if pos < len(toks) and toks[pos][0].startswith("^"):
                    pos += 1
                    terms.append(make_loop(tuple(inner)))
                else:
                    terms.extend(inner)
            else:
                if pos < len(toks) and toks[pos][0].startswith("^"):
                    pos += 1
                    terms.append(make_loop((Letter(tok),)))
                else:
                    terms.append(Letter(tok))
        if stop_at_paren:
            raise ParseError("Missing ')'", position=len(text))
        return terms

    return tuple(expr(False))


def parse_script(text: str) -> List[Wff]:
    """One formula per non-blank line; `#` starts a comment."""
    out: List[Wff] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(wff_parse(line))
    return out


# ---- Printing ----
def format_term(term: Term) -> str:
    if isinstance(term, Letter):
        return term.name
    if len(term.body) == 1 and isinstance(term.body[0], Letter):
        return f"{term.body[0].name}^(w+*)"
    return f"({format_wff(term.body)})^(w+*)"


def format_wff(w: Wff) -> str:
    return " ".join(format_term(t) for t in w)


def letters(w: Wff) -> List[str]:
    out: List[str] = []
    for t in w:
        if isinstance(t, Letter):
            out.append(t.name)
        else:
            out.extend(letters(t.body))
    return out

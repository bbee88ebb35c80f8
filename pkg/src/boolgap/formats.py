"""Plain-text format for languages, instances and formula families.

One line per item, whitespace separated, ``#`` starts a comment::

    domain 2
    rel plus1in3 arity 3
    100
    010
    001
    language corpus:nae3
    vars x y z
    var w
    constraint plus1in3 x y z
    bottop x w
    formula pi12 free x1 x2 exists w atoms plus1in3(x1,x2,w)
    formula diag free x1 x2 atoms plus1in3(x1,x1,x2) & x1=x2

Rows are digit strings when every value is a single digit, otherwise
whitespace-separated integers.  See docs/formats.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus
from .core import BoolgapError, Equality, Instance, PpFormula, Relation, RelationAtom, Template


class ParseError(BoolgapError, ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class SemanticError(BoolgapError, ValueError):
    pass


KEYWORDS = ("domain", "rel", "language", "vars", "var", "constraint", "bottop", "formula")
_ATOM = re.compile(r"\s*([A-Za-z_][\w:.\-']*)\s*\(([^()]*)\)\s*$")
_EQ = re.compile(r"\s*([^\s=&()]+)\s*=\s*([^\s=&()]+)\s*$")


@dataclass
class Document:
    domain_size: int | None = None
    relations: dict[str, Relation] = field(default_factory=dict)
    variables: list[str] = field(default_factory=list)
    constraints: list[tuple[tuple[str, ...], str]] = field(default_factory=list)
    bot_top: tuple[str, str] | None = None
    formulas: list[PpFormula] = field(default_factory=list)

    def template(self) -> Template:
        if not self.relations:
            raise SemanticError("no relations declared")
        d = self.domain_size if self.domain_size is not None else max(r.domain_size for r in self.relations.values())
        rels = {}
        for name, r in self.relations.items():
            rels[name] = r if r.domain_size == d else Relation(r.rows, d, r.arity)
        return Template(d, rels)

    def instance(self) -> Instance:
        t = self.template()
        for scope, sym in self.constraints:
            if sym not in t:
                raise SemanticError(f"unknown relation symbol {sym!r}")
            if len(scope) != t[sym].arity:
                raise SemanticError(f"constraint {sym} has {len(scope)} arguments, arity is {t[sym].arity}")
        try:
            return Instance(tuple(self.variables), t, self.constraints, self.bot_top)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None


def _col(raw: str, token: str, start: int = 0) -> int:
    return raw.find(token, start) + 1


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _parse_row(text: str, arity: int, lineno: int, raw: str) -> tuple[int, ...]:
    parts = text.split()
    if len(parts) == 1 and len(parts[0]) == arity and parts[0].isdigit():
        return tuple(int(c) for c in parts[0])
    if len(parts) == arity and all(p.isdigit() for p in parts):
        return tuple(int(p) for p in parts)
    raise ParseError(lineno, _col(raw, text.strip()) or 1, f"expected a row of {arity} values")


def parse_formula(text: str, lineno: int = 1, raw: str | None = None) -> PpFormula:
    """``NAME free X.. [exists W..] atoms A & A ..`` (the leading ``formula`` removed)."""
    raw = raw if raw is not None else text
    tokens = text.split()
    if len(tokens) < 2 or tokens[1] != "free":
        raise ParseError(lineno, _col(raw, tokens[1] if len(tokens) > 1 else text) or 1, "expected 'free'")
    name = tokens[0]
    head, sep, body = text.partition(" atoms ")
    if not sep:
        raise ParseError(lineno, len(raw) + 1, "expected 'atoms'")
    words = head.split()[2:]
    if "exists" in words:
        i = words.index("exists")
        free, bound = words[:i], words[i + 1:]
    else:
        free, bound = words, []
    atoms = []
    offset = raw.find(" atoms ") + len(" atoms ")
    for part in body.split("&"):
        m = _ATOM.match(part)
        if m:
            args = tuple(a.strip() for a in m.group(2).split(",") if a.strip())
            atoms.append(RelationAtom(m.group(1), args))
        else:
            m = _EQ.match(part)
            if not m:
                raise ParseError(lineno, offset + 1, f"cannot read atom {part.strip()!r}")
            atoms.append(Equality(m.group(1), m.group(2)))
        offset += len(part) + 1
    try:
        return PpFormula(tuple(free), tuple(bound), tuple(atoms), name)
    except ValueError as exc:
        raise ParseError(lineno, 1, str(exc)) from None


def parse_text(text: str, base: Path | None = None) -> Document:
    doc = Document()
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        line = _strip(raw)
        i += 1
        if not line.strip():
            continue
        tokens = line.split()
        kw = tokens[0]
        if kw == "domain":
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise ParseError(lineno, _col(raw, tokens[-1]), "expected 'domain N' with N >= 1")
            doc.domain_size = int(tokens[1])
        elif kw == "rel":
            if len(tokens) != 4 or tokens[2] != "arity" or not tokens[3].isdigit():
                raise ParseError(lineno, _col(raw, tokens[-1]), "expected 'rel NAME arity K'")
            name, arity = tokens[1], int(tokens[3])
            rows = []
            while i < len(lines):
                nxt = _strip(lines[i])
                if not nxt.strip():
                    i += 1
                    continue
                if nxt.split()[0] in KEYWORDS:
                    break
                rows.append(_parse_row(nxt, arity, i + 1, lines[i]))
                i += 1
            if not rows:
                raise ParseError(lineno, len(raw) + 1, f"relation {name!r} has no rows")
            d = doc.domain_size or max(2, max(v for t in rows for v in t) + 1)
            if any(v >= d for t in rows for v in t):
                raise SemanticError(f"relation {name!r} leaves the domain 0..{d - 1}")
            if name in doc.relations:
                raise SemanticError(f"relation {name!r} declared twice")
            doc.relations[name] = Relation(rows, d, arity)
        elif kw == "language":
            if len(tokens) != 2:
                raise ParseError(lineno, len(raw) + 1, "expected 'language corpus:NAME' or a file")
            t = load_language(tokens[1], base)
            if doc.domain_size is None:
                doc.domain_size = t.domain_size
            doc.relations.update(t.relations)
        elif kw in ("vars", "var"):
            if len(tokens) < 2:
                raise ParseError(lineno, len(raw) + 1, "expected variable names")
            doc.variables.extend(tokens[1:])
        elif kw == "constraint":
            if len(tokens) < 3:
                raise ParseError(lineno, len(raw) + 1, "expected 'constraint SYMBOL v1 ...'")
            doc.constraints.append((tuple(tokens[2:]), tokens[1]))
        elif kw == "bottop":
            if len(tokens) != 3:
                raise ParseError(lineno, len(raw) + 1, "expected 'bottop BOT TOP'")
            doc.bot_top = (tokens[1], tokens[2])
        elif kw == "formula":
            doc.formulas.append(parse_formula(line.strip()[len("formula"):].strip(), lineno, raw))
        else:
            raise ParseError(lineno, _col(raw, kw), f"unknown keyword {kw!r}")
    return doc


def _read(source) -> tuple[str, Path | None]:
    path = Path(source)
    try:
        return path.read_text(encoding="utf-8"), path.parent
    except OSError as exc:
        raise SemanticError(f"cannot read {source}: {exc.strerror}") from None


def load_language(ref, base: Path | None = None) -> Template:
    """A template from ``corpus:NAME`` or a file path."""
    ref = str(ref)
    if ref.startswith("corpus:"):
        try:
            return corpus.language(ref[len("corpus:"):])
        except KeyError as exc:
            raise SemanticError(exc.args[0]) from None
    path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
    text, parent = _read(path)
    return parse_text(text, parent).template()


def load_instance(ref) -> Instance:
    ref = str(ref)
    if ref.startswith("corpus:"):
        try:
            return corpus.instance(ref[len("corpus:"):])
        except KeyError as exc:
            raise SemanticError(exc.args[0]) from None
    text, parent = _read(ref)
    return parse_text(text, parent).instance()


def load_family(ref, template: Template | None = None) -> list[PpFormula]:
    text, parent = _read(ref)
    return parse_formula_family(text, template, parent)


def parse_language(text: str) -> Template:
    return parse_text(text).template()


def parse_instance(text: str) -> Instance:
    return parse_text(text).instance()


def parse_formula_family(text: str, template: Template | None = None, base: Path | None = None) -> list[PpFormula]:
    doc = parse_text(text, base)
    known = dict(template.relations) if template is not None else {}
    known.update(doc.relations)
    if known:
        for phi in doc.formulas:
            for a in phi.atoms:
                if isinstance(a, RelationAtom):
                    if a.symbol not in known:
                        raise SemanticError(f"formula {phi.name!r} uses unknown symbol {a.symbol!r}")
                    if len(a.args) != known[a.symbol].arity:
                        raise SemanticError(f"formula {phi.name!r}: {a.symbol} expects {known[a.symbol].arity} arguments")
    return doc.formulas


# -- serialization -------------------------------------------------------------------

def _row(t, d: int) -> str:
    return "".join(map(str, t)) if d <= 10 else " ".join(map(str, t))


def dump_language(template: Template) -> str:
    out = [f"domain {template.domain_size}"]
    for name in sorted(template.relations):
        r = template.relations[name]
        out.append(f"rel {name} arity {r.arity}")
        out.extend(_row(t, template.domain_size) for t in r.rows)
    return "\n".join(out) + "\n"


def dump_instance(instance: Instance) -> str:
    out = [dump_language(instance.template).rstrip("\n")]
    if instance.variables:
        out.append("vars " + " ".join(instance.variables))
    if instance.bot_top is not None:
        out.append(f"bottop {instance.bot_top[0]} {instance.bot_top[1]}")
    for scope, sym in instance.constraints:
        out.append(f"constraint {sym} " + " ".join(scope))
    return "\n".join(out) + "\n"


def format_formula(phi: PpFormula, name: str | None = None) -> str:
    parts = [f"formula {name or phi.name or 'f'} free " + " ".join(phi.free_vars)]
    if phi.bound_vars:
        parts.append("exists " + " ".join(phi.bound_vars))
    atoms = []
    for a in phi.atoms:
        if isinstance(a, Equality):
            atoms.append(f"{a.left}={a.right}")
        else:
            atoms.append(f"{a.symbol}({','.join(a.args)})")
    parts.append("atoms " + " & ".join(atoms))
    return " ".join(parts)


def dump_formulas(formulas) -> str:
    return "".join(format_formula(phi, phi.name or f"f{i + 1}") + "\n" for i, phi in enumerate(formulas))

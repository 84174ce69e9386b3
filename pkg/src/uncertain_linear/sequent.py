"""One-sided linear sequent calculus: proof checker and evidence ledger.

A proof is a tree of :class:`ProofNode`.  Nodes name their rule and the
arguments the rule needs (principal formula, context splits); conclusions
are computed bottom-up by :func:`check`.  A node may also declare the
conclusion it claims, which is then compared with the computed one.

Contraction and weakening exist only for ``?``-formulas.  The ledger counts
the axiom links that reach the end sequent, i.e. how much evidence for each
atom the proof consumes.  Multiplicative rules add the ledgers of their
premises; ``&`` takes the per-atom maximum of its two alternatives, which
share one context; a cut subtracts the links it splices together.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .evaluator import Environment, evaluate
from .formula import (
    BOTTOM, ONE, TOP, Atom, Bang, Bottom, Dual, Formula, FormulaParser, FormulaSyntaxError,
    One, Par, Plus, Quest, Tensor, Top, With, Zero, children, dual, nnf, render,
)
from .truth import TruthValue


class Rule(enum.Enum):
    AX = "ax"
    CUT = "cut"
    TENSOR = "tensor"
    PAR = "par"
    WITH = "with"
    PLUS1 = "plus1"
    PLUS2 = "plus2"
    ONE = "one"
    BOTTOM = "bottom"
    TOP = "top"
    PROMOTE = "promote"
    DERELICT = "derelict"
    WEAKEN = "weaken?"
    CONTRACT = "contract?"


ARITY = {
    Rule.AX: 0, Rule.CUT: 2, Rule.TENSOR: 2, Rule.PAR: 1, Rule.WITH: 2, Rule.PLUS1: 1,
    Rule.PLUS2: 1, Rule.ONE: 0, Rule.BOTTOM: 1, Rule.TOP: 0, Rule.PROMOTE: 1,
    Rule.DERELICT: 1, Rule.WEAKEN: 1, Rule.CONTRACT: 1,
}


def _key(f: Formula) -> str:
    return render(f)


@dataclass(frozen=True)
class Sequent:
    """A multiset of NNF formulas, stored in canonical (sorted) order."""

    formulas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(sorted(self.formulas, key=_key)))

    @classmethod
    def of(cls, formulas: Iterable[Formula]) -> "Sequent":
        return cls(tuple(nnf(f) for f in formulas))

    @classmethod
    def two_sided(cls, left: Iterable[Formula], right: Iterable[Formula]) -> "Sequent":
        return cls(tuple(dual(f) for f in left) + tuple(nnf(f) for f in right))

    @cached_property
    def counts(self) -> Counter:
        return Counter(self.formulas)

    def __add__(self, other: "Sequent") -> "Sequent":
        return Sequent(self.formulas + other.formulas)

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def minus(self, other: Iterable[Formula]) -> Optional["Sequent"]:
        """Multiset difference, or None if ``other`` is not contained in self."""
        need = Counter(other)
        have = self.counts
        if any(have[f] < k for f, k in need.items()):
            return None
        rest = have - need
        return Sequent(tuple(rest.elements()))

    def __str__(self):
        return "|- " + ", ".join(render(f) for f in self.formulas)


@dataclass(frozen=True)
class ProofNode:
    rule: Rule
    premises: tuple = ()
    principal: Optional[Formula] = None
    split: Optional[tuple] = None  # (left context, right context) for tensor and cut
    context: Optional[tuple] = None  # side formulas of top
    conclusion: Optional[Sequent] = None  # declared, checked against the computed one


@dataclass(frozen=True)
class Violation:
    rule: str
    path: str
    message: str
    expected: Optional[Sequent] = None
    found: Optional[Sequent] = None

    def __str__(self):
        text = f"{self.path}: [{self.rule}] {self.message}"
        if self.expected is not None:
            text += f"\n  expected: {self.expected}"
        if self.found is not None:
            text += f"\n  found:    {self.found}"
        return text


class ProofViolation(Exception):
    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(str(violation))


@dataclass
class EvidenceLedger:
    tokens_consumed: Counter = field(default_factory=Counter)
    axiom_links: Counter = field(default_factory=Counter)
    cut_transfers: Counter = field(default_factory=Counter)
    reuse_events: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tokens_consumed": dict(sorted(self.tokens_consumed.items())),
            "axiom_links": dict(sorted(self.axiom_links.items())),
            "cut_transfers": dict(sorted(self.cut_transfers.items())),
            "reuse_events": [{"path": p, "formula": render(f)} for p, f in self.reuse_events],
        }

    def lines(self) -> list[str]:
        out = [f"  {atom}: {n}" for atom, n in sorted(self.tokens_consumed.items())]
        for path, f in self.reuse_events:
            out.append(f"  reuse {render(f)} at {path}")
        return out


@dataclass(frozen=True)
class Derivation:
    """A checked node: the computed conclusion and checked subderivations."""

    rule: Rule
    path: str
    conclusion: Sequent
    principal_index: Optional[int]
    premises: tuple


@dataclass(frozen=True)
class CheckResult:
    valid: bool
    ledger: EvidenceLedger
    failure: Optional[Violation] = None
    derivation: Optional[Derivation] = None

    def __bool__(self):
        return self.valid


# -- evidence measure ------------------------------------------------------------

def evidence_measure(f: Formula) -> Counter:
    """Atom occurrences in ``f``, taking the per-atom maximum across ``&``/``+``."""
    if isinstance(f, Atom):
        return Counter({f.name: 1})
    if isinstance(f, (With, Plus)):
        return _pointwise_max(evidence_measure(f.left), evidence_measure(f.right))
    total = Counter()
    for c in children(f):
        total.update(evidence_measure(c))
    return total


def link_demand(seq: Sequent) -> Counter:
    """Axiom links needed to consume every atom occurrence of ``seq`` once.

    Each link consumes one occurrence of ``a`` and one of ``a^``, so this is
    half the pooled occurrence count.
    """
    pooled = Counter()
    for f in seq:
        pooled.update(evidence_measure(f))
    return Counter({a: n / 2 for a, n in pooled.items()})


def _pointwise_max(a: Counter, b: Counter) -> Counter:
    return Counter({k: max(a[k], b[k]) for k in set(a) | set(b)})


# -- checking ---------------------------------------------------------------------

def check(proof: ProofNode) -> CheckResult:
    ledger = EvidenceLedger()
    try:
        deriv, tokens = _derive(proof, "root", ledger)
    except ProofViolation as exc:
        return CheckResult(False, EvidenceLedger(), exc.violation, None)
    ledger.tokens_consumed = +tokens
    return CheckResult(True, ledger, None, deriv)


def _fail(node: ProofNode, path: str, message: str, expected=None, found=None):
    raise ProofViolation(Violation(node.rule.value, path, message, expected, found))


def _seq(fs) -> Sequent:
    return Sequent(tuple(fs))


def _single(node, path, premise: Sequent, ctx: tuple, side: str) -> Formula:
    rest = premise.minus(ctx)
    if rest is None:
        _fail(node, path, f"{side} context is not part of the {side} premise",
              expected=_seq(ctx), found=premise)
    if len(rest) != 1:
        _fail(node, path,
              f"{side} premise must have exactly one formula outside its declared context, "
              f"found {len(rest)}", expected=_seq(ctx), found=premise)
    return rest.formulas[0]


def _principal(node, path, kind, what):
    f = node.principal
    if f is None:
        _fail(node, path, f"missing principal formula ({what})")
    if not isinstance(f, kind):
        _fail(node, path, f"principal formula {render(f)} is not {what}")
    return f


def _take(node, path, premise: Sequent, *fs: Formula) -> Sequent:
    rest = premise.minus(fs)
    if rest is None:
        _fail(node, path, "premise lacks the active formula(s) " + ", ".join(render(f) for f in fs),
              expected=_seq(fs), found=premise)
    return rest


def _derive(node: ProofNode, path: str, ledger: EvidenceLedger):
    rule = node.rule
    if len(node.premises) != ARITY[rule]:
        _fail(node, path, f"rule expects {ARITY[rule]} premise(s), got {len(node.premises)}")
    subs = [_derive(p, f"{path}/{i}", ledger) for i, p in enumerate(node.premises)]
    prem = [d.conclusion for d, _ in subs]
    tokens = Counter()
    for _, t in subs:
        tokens.update(t)
    new = None  # the formula introduced by this rule

    if rule is Rule.AX:
        lit = node.principal
        if isinstance(lit, Dual) and isinstance(lit.body, Atom):
            lit = lit.body
        if not isinstance(lit, Atom):
            shown = render(lit) if lit is not None else "nothing"
            _fail(node, path, f"axiom restricted to atoms, got {shown}")
        concl = _seq((Dual(lit), lit))
        new = lit
        ledger.axiom_links[lit.name] += 1
        tokens = Counter({lit.name: 1})

    elif rule in (Rule.CUT, Rule.TENSOR):
        if node.split is None:
            _fail(node, path, "missing context split")
        left_ctx, right_ctx = (tuple(nnf(f) for f in side) for side in node.split)
        a = _single(node, path, prem[0], left_ctx, "left")
        b = _single(node, path, prem[1], right_ctx, "right")
        if rule is Rule.CUT:
            if b != dual(a):
                _fail(node, path, f"cut formulas {render(a)} and {render(b)} are not dual")
            concl = _seq(left_ctx + right_ctx)
            spliced = evidence_measure(a)
            ledger.cut_transfers.update(spliced)
            tokens.subtract(spliced)
        else:
            new = Tensor(a, b)
            concl = _seq(left_ctx + right_ctx + (new,))

    elif rule is Rule.PAR:
        new = _principal(node, path, Par, "a par")
        concl = _take(node, path, prem[0], new.left, new.right) + _seq((new,))

    elif rule is Rule.WITH:
        new = _principal(node, path, With, "a with")
        ctx_l = _take(node, path, prem[0], new.left)
        ctx_r = _take(node, path, prem[1], new.right)
        if ctx_l != ctx_r:
            _fail(node, path, "premises of with must share an identical context",
                  expected=ctx_l, found=ctx_r)
        concl = ctx_l + _seq((new,))
        tokens = _pointwise_max(subs[0][1], subs[1][1])

    elif rule in (Rule.PLUS1, Rule.PLUS2):
        new = _principal(node, path, Plus, "a plus")
        kept = new.left if rule is Rule.PLUS1 else new.right
        concl = _take(node, path, prem[0], kept) + _seq((new,))

    elif rule is Rule.ONE:
        new = ONE
        concl = _seq((ONE,))

    elif rule is Rule.BOTTOM:
        if node.principal is not None and node.principal != BOTTOM:
            _fail(node, path, f"principal formula {render(node.principal)} is not F")
        new = BOTTOM
        concl = prem[0] + _seq((BOTTOM,))

    elif rule is Rule.TOP:
        new = TOP
        concl = _seq(tuple(nnf(f) for f in (node.context or ())) + (TOP,))

    elif rule is Rule.PROMOTE:
        new = _principal(node, path, Bang, "a !-formula")
        ctx = _take(node, path, prem[0], new.body)
        bad = [f for f in ctx if not isinstance(f, Quest)]
        if bad:
            _fail(node, path, "promotion requires every context formula to be ?-prefixed; found "
                  + ", ".join(render(f) for f in bad), found=ctx)
        concl = ctx + _seq((new,))

    elif rule is Rule.DERELICT:
        new = _principal(node, path, Quest, "a ?-formula")
        concl = _take(node, path, prem[0], new.body) + _seq((new,))

    elif rule is Rule.WEAKEN:
        new = node.principal
        if not isinstance(new, Quest):
            shown = render(new) if new is not None else "nothing"
            _fail(node, path, f"weakening restricted to ?-formulas, got {shown}")
        concl = prem[0] + _seq((new,))

    elif rule is Rule.CONTRACT:
        new = node.principal
        if not isinstance(new, Quest):
            shown = render(new) if new is not None else "nothing"
            _fail(node, path, f"contraction restricted to ?-formulas, got {shown}")
        concl = _take(node, path, prem[0], new, new) + _seq((new,))
        ledger.reuse_events.append((path, new))

    else:  # pragma: no cover - enum is closed
        raise AssertionError(rule)

    if node.conclusion is not None and node.conclusion != concl:
        _declared_mismatch(node, path, concl)

    index = concl.formulas.index(new) if new is not None and new in concl.counts else None
    return Derivation(rule, path, concl, index, tuple(d for d, _ in subs)), tokens


def _declared_mismatch(node: ProofNode, path: str, computed: Sequent):
    declared = node.conclusion
    if node.rule is Rule.ONE:
        _fail(node, path, "rule one requires an empty context", expected=computed, found=declared)
    if node.rule is Rule.TENSOR:
        shared = computed.minus(declared.formulas)
        left, right = node.split
        overlap = Counter(nnf(f) for f in left) & Counter(nnf(f) for f in right)
        if shared is not None and shared.formulas and not (Counter(shared.formulas) - overlap):
            _fail(node, path, "tensor premises may not share context formulas: "
                  + ", ".join(render(f) for f in shared), expected=computed, found=declared)
    _fail(node, path, "declared conclusion does not match the rule", expected=computed, found=declared)


# -- truth-value annotation --------------------------------------------------------

@dataclass(frozen=True)
class Annotated:
    rule: Rule
    path: str
    sequent: Sequent
    value: TruthValue
    premises: tuple

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()


def sequent_formula(seq: Sequent) -> Formula:
    """The par of a sequent's members, folded left in canonical order."""
    fs = seq.formulas
    if not fs:
        return BOTTOM
    acc = fs[0]
    for f in fs[1:]:
        acc = Par(acc, f)
    return acc


def tv_annotate(proof: ProofNode, env: Environment) -> Annotated:
    result = check(proof)
    if not result.valid:
        raise ValueError(f"cannot annotate an invalid proof: {result.failure}")

    def walk(d: Derivation) -> Annotated:
        value = evaluate(sequent_formula(d.conclusion), env)
        return Annotated(d.rule, d.path, d.conclusion, value, tuple(walk(p) for p in d.premises))

    return walk(result.derivation)


# -- derived proofs ------------------------------------------------------------------

def identity_proof(f: Formula) -> ProofNode:
    """Eta-expanded proof of ``|- f^, f`` built from atomic axioms."""
    f = nnf(f)
    if isinstance(f, Atom):
        return ProofNode(Rule.AX, principal=f)
    if isinstance(f, Dual):
        return ProofNode(Rule.AX, principal=f.body)
    if isinstance(f, (Tensor, Par)):
        t = f if isinstance(f, Tensor) else dual(f)  # the tensor side of the pair
        a, b = t.left, t.right
        tensor = ProofNode(Rule.TENSOR, (identity_proof(a), identity_proof(b)),
                           split=((dual(a),), (dual(b),)))
        return ProofNode(Rule.PAR, (tensor,), principal=dual(t))
    if isinstance(f, (With, Plus)):
        w = f if isinstance(f, With) else dual(f)  # the with side of the pair
        p = dual(w)
        return ProofNode(Rule.WITH, (
            ProofNode(Rule.PLUS1, (identity_proof(w.left),), principal=p),
            ProofNode(Rule.PLUS2, (identity_proof(w.right),), principal=p),
        ), principal=w)
    if isinstance(f, (One, Bottom)):
        return ProofNode(Rule.BOTTOM, (ProofNode(Rule.ONE),))
    if isinstance(f, (Top, Zero)):
        return ProofNode(Rule.TOP, context=(Zero(),))
    b = f if isinstance(f, Bang) else dual(f)  # the ! side of the pair
    q = dual(b)
    return ProofNode(Rule.PROMOTE, (ProofNode(Rule.DERELICT, (identity_proof(b.body),), principal=q),),
                     principal=b)


# -- proof files ----------------------------------------------------------------------

class ProofSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        line = text.count("\n", 0, max(offset - 1, 0)) + 1
        col = offset - (text.rfind("\n", 0, max(offset - 1, 0)) + 1)
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")


_PTOKEN = re.compile(r"""
    (?P<ws>\s+|;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<bracket>\[[^\]]*\])
  | (?P<turnstile>\|-)
  | (?P<arrow>=>)
  | (?P<word>[^\s()\[\];]+)
""", re.VERBOSE)

_SINGLE_ARG = {Rule.PAR, Rule.WITH, Rule.PLUS1, Rule.PLUS2, Rule.PROMOTE, Rule.DERELICT,
               Rule.WEAKEN, Rule.CONTRACT, Rule.AX, Rule.BOTTOM}


def _lex_proof(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if m is None:
            raise ProofSyntaxError(f"unexpected character {text[pos]!r}", pos + 1, text)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _ProofReader:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex_proof(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, offset):
        return ProofSyntaxError(message, offset, self.text)

    def formulas(self, tok) -> tuple:
        kind, raw, offset = tok
        if kind == "word":
            body, base = raw, offset - 1
        else:
            body, base = raw[1:-1].replace(",", " "), offset
        try:
            parser = FormulaParser(body, base)
            out = []
            while not parser.at_end():
                out.append(parser.parse_formula())
        except FormulaSyntaxError as exc:
            raise self.error(f"bad formula: {exc}", exc.offset) from None
        return tuple(out)

    def node(self) -> ProofNode:
        kind, raw, offset = self.take()
        if kind != "open":
            raise self.error(f"expected '(' but found {raw or 'end of input'!r}", offset)
        kind, name, name_at = self.take()
        try:
            rule = Rule(name)
        except ValueError:
            raise self.error(f"unknown rule {name!r}", name_at) from None
        args, premises, declared = [], [], None
        while True:
            kind, raw, at = self.peek()
            if kind == "close":
                self.take()
                break
            if kind == "end":
                raise self.error(f"unclosed node for rule {name!r}", offset)
            if kind == "open":
                premises.append(self.node())
            elif kind == "turnstile":
                self.take()
                declared = self.declared(at)
            elif kind in ("bracket", "word"):
                if premises:
                    raise self.error(f"arguments of {name!r} must precede its premises", at)
                args.append(self.take())
            else:
                raise self.error(f"unexpected {raw!r}", at)
        if len(premises) != ARITY[rule]:
            raise self.error(f"rule {name!r} expects {ARITY[rule]} premise(s), got {len(premises)}",
                             offset)
        return self.build(rule, name, args, tuple(premises), declared, offset)

    def declared(self, at) -> Sequent:
        tok = self.take()
        if tok[0] != "bracket":
            raise self.error("expected a bracketed formula list after '|-'", tok[2])
        first = self.formulas(tok)
        if self.peek()[0] == "arrow":
            self.take()
            tok = self.take()
            if tok[0] != "bracket":
                raise self.error("expected a bracketed formula list after '=>'", tok[2])
            return Sequent.two_sided(first, self.formulas(tok))
        return Sequent.of(first)

    def build(self, rule, name, args, premises, declared, offset) -> ProofNode:
        def expect(n_min, n_max=None):
            n_max = n_min if n_max is None else n_max
            if not n_min <= len(args) <= n_max:
                raise self.error(f"rule {name!r} takes {n_min}"
                                 + (f"-{n_max}" if n_max != n_min else "")
                                 + f" argument(s), got {len(args)}", offset)

        if rule in (Rule.CUT, Rule.TENSOR):
            expect(2)
            if any(a[0] != "bracket" for a in args):
                raise self.error(f"rule {name!r} needs two bracketed context lists", offset)
            split = (self.formulas(args[0]), self.formulas(args[1]))
            return ProofNode(rule, premises, split=split, conclusion=declared)
        if rule is Rule.ONE:
            expect(0)
            return ProofNode(rule, premises, conclusion=declared)
        if rule is Rule.TOP:
            expect(0, 1)
            ctx = self.formulas(args[0]) if args else ()
            return ProofNode(rule, premises, context=ctx, conclusion=declared)
        if rule is Rule.BOTTOM:
            expect(0, 1)
        else:
            expect(1)
        principal = None
        if args:
            fs = self.formulas(args[0])
            if len(fs) != 1:
                raise self.error(f"rule {name!r} takes exactly one principal formula", args[0][2])
            principal = fs[0] if rule is Rule.AX else nnf(fs[0])
        return ProofNode(rule, premises, principal=principal, conclusion=declared)


def parse_proof(text: str) -> ProofNode:
    reader = _ProofReader(text)
    node = reader.node()
    kind, raw, at = reader.peek()
    if kind != "end":
        raise reader.error(f"trailing input {raw!r}", at)
    return node


def render_proof(node: ProofNode, indent: int = 0) -> str:
    """S-expression text that :func:`parse_proof` reads back to ``node``."""
    def flist(fs):
        return "[" + ", ".join(render(f) for f in fs) + "]"

    parts = [node.rule.value]
    if node.principal is not None:
        parts.append(flist((node.principal,)))
    if node.split is not None:
        parts.extend(flist(side) for side in node.split)
    if node.context:
        parts.append(flist(node.context))
    if node.conclusion is not None:
        parts.append("|- " + flist(node.conclusion.formulas))
    head = "(" + " ".join(parts)
    if not node.premises:
        return " " * indent + head + ")"
    inner = "\n".join(render_proof(p, indent + 2) for p in node.premises)
    return " " * indent + head + "\n" + inner + ")"

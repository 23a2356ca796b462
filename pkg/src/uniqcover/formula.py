"""Restricted planar 3SAT formulas with comb-layout annotations.

The file format is one header line ``p vr3sat N K`` followed by K clause
lines ``c <L|R> <level:int> <lit> <lit> <lit>`` where each literal is a
signed 1-based variable index. Variables are imagined on a vertical line in
index order; each clause attaches from the given side at the given nesting
level, so clause intervals on one side must be disjoint or properly nested.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormulaSyntaxError, LayoutCrossingError, VariableDegreeError


@dataclass(frozen=True)
class Literal:
    var: int  # 1-based
    neg: bool

    def __str__(self):
        return f"-{self.var}" if self.neg else f"{self.var}"


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, Literal, Literal]
    side: str  # "L" or "R"
    level: int

    @property
    def interval(self) -> tuple[int, int]:
        vs = [lit.var for lit in self.literals]
        return min(vs), max(vs)


@dataclass(frozen=True)
class LaidOutFormula:
    n_vars: int
    clauses: tuple[Clause, ...]

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def validate(self) -> None:
        """Check degree and layout realizability; raise on violation."""
        if self.n_vars < 1:
            raise FormulaSyntaxError("formula must have at least one variable")
        occurrences: dict[int, int] = {}
        for ci, cl in enumerate(self.clauses):
            if len(cl.literals) != 3:
                raise FormulaSyntaxError(f"clause {ci} must have exactly 3 literals")
            if cl.side not in ("L", "R"):
                raise FormulaSyntaxError(f"clause {ci} side must be L or R: {cl.side!r}")
            if cl.level < 0:
                raise FormulaSyntaxError(f"clause {ci} level must be >= 0")
            for lit in cl.literals:
                if not 1 <= lit.var <= self.n_vars:
                    raise FormulaSyntaxError(
                        f"clause {ci} uses variable {lit.var} outside 1..{self.n_vars}")
                occurrences[lit.var] = occurrences.get(lit.var, 0) + 1
        for var, count in sorted(occurrences.items()):
            if count > 3:
                raise VariableDegreeError(
                    f"variable {var} occurs {count} times; at most 3 supported")
        self._validate_layout()

    def _validate_layout(self) -> None:
        for side in ("L", "R"):
            group = [(ci, cl) for ci, cl in enumerate(self.clauses) if cl.side == side]
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    (ai, a), (bi, b) = group[i], group[j]
                    alo, ahi = a.interval
                    blo, bhi = b.interval
                    if ahi < blo or bhi < alo:
                        continue  # disjoint; any levels work
                    if alo < blo < ahi < bhi or blo < alo < bhi < ahi:
                        raise LayoutCrossingError(
                            f"clauses {ai} and {bi} on side {side} have properly "
                            f"crossing intervals {a.interval} and {b.interval}")
                    a_in_b = blo <= alo and ahi <= bhi
                    b_in_a = alo <= blo and bhi <= ahi
                    if not (a_in_b or b_in_a):
                        continue  # intervals only share an endpoint; independent claws
                    if a_in_b and b_in_a:
                        # Equal intervals: the lower level claw is the inner one.
                        inner, outer = ((ai, a), (bi, b)) if a.level < b.level else ((bi, b), (ai, a))
                    elif a_in_b:
                        inner, outer = (ai, a), (bi, b)
                    else:
                        inner, outer = (bi, b), (ai, a)
                    ii, icl = inner
                    oi, ocl = outer
                    if icl.level >= ocl.level:
                        raise LayoutCrossingError(
                            f"clause {ii} nests inside clause {oi} on side {side} "
                            f"but has level {icl.level} >= {ocl.level}")
                    ilo, ihi = icl.interval
                    for lit in ocl.literals:
                        if ilo < lit.var < ihi:
                            raise LayoutCrossingError(
                                f"clause {oi} attaches to variable {lit.var} strictly "
                                f"inside the interval of nested clause {ii}")


def parse_formula(text: str) -> LaidOutFormula:
    """Parse and validate a formula file; see module docstring for the format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormulaSyntaxError("empty formula file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "p" or header[1] != "vr3sat":
        raise FormulaSyntaxError(f"bad header line: {lines[0]!r}")
    try:
        n_vars, n_clauses = int(header[2]), int(header[3])
    except ValueError as exc:
        raise FormulaSyntaxError(f"bad header counts: {lines[0]!r}") from exc
    if len(lines) - 1 != n_clauses:
        raise FormulaSyntaxError(
            f"header declares {n_clauses} clauses but file has {len(lines) - 1}")
    clauses = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 6 or parts[0] != "c":
            raise FormulaSyntaxError(f"bad clause line: {ln!r}")
        side = parts[1]
        if side not in ("L", "R"):
            raise FormulaSyntaxError(f"bad side in clause line: {ln!r}")
        try:
            level = int(parts[2])
            raw = [int(tok) for tok in parts[3:6]]
        except ValueError as exc:
            raise FormulaSyntaxError(f"bad integer in clause line: {ln!r}") from exc
        if any(v == 0 for v in raw):
            raise FormulaSyntaxError(f"literal 0 is not allowed: {ln!r}")
        lits = tuple(Literal(abs(v), v < 0) for v in raw)
        clauses.append(Clause(lits, side, level))
    formula = LaidOutFormula(n_vars, tuple(clauses))
    formula.validate()
    return formula


def format_formula(formula: LaidOutFormula) -> str:
    """Inverse of parse_formula."""
    out = [f"p vr3sat {formula.n_vars} {formula.n_clauses}"]
    for cl in formula.clauses:
        lits = " ".join(str(-lit.var if lit.neg else lit.var) for lit in cl.literals)
        out.append(f"c {cl.side} {cl.level} {lits}")
    return "\n".join(out) + "\n"


def clause_satisfied(clause: Clause, assignment: tuple[bool, ...]) -> bool:
    return any(assignment[lit.var - 1] != lit.neg for lit in clause.literals)


def formula_satisfied(formula: LaidOutFormula, assignment: tuple[bool, ...]) -> bool:
    return all(clause_satisfied(cl, assignment) for cl in formula.clauses)

"""Degree-zero 2-cocycles of the centerless algebra on a finite mode window.

A degree-zero cocycle is determined by the numbers c(X_m, Y_{-m}). For a
pair of distinct families X < Y there is one unknown per mode |m| <= W; for a
repeated family only m = 1..W are free, because antisymmetry forces
c(X_{-m}, X_m) = -c(X_m, X_{-m}) and c(X_0, X_0) = 0. The cocycle identity
c([x,y],z) + c([y,z],x) + c([z,x],y) = 0 is imposed for every triple of
generators whose modes add up to zero, using the centerless bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import FAMILIES, GeneratorLabel, bracket_labels, generators
from .kernel.linalg import SparseEliminator, rref
from .kernel.rational import format_rational

PAIRS: Tuple[Tuple[str, str], ...] = tuple(
    (a, b) for i, a in enumerate(FAMILIES) for b in FAMILIES[i:]
)


def pair_name(pair: Tuple[str, str]) -> str:
    return pair[0] + pair[1]


@dataclass
class CocycleAnsatz:
    window: int
    families: Tuple[str, ...] = FAMILIES
    index: Dict[Tuple[Tuple[str, str], int], int] = field(default_factory=dict)
    keys: List[Tuple[Tuple[str, str], int]] = field(default_factory=list)

    def __post_init__(self):
        W = self.window
        for pair in PAIRS:
            if pair[0] not in self.families or pair[1] not in self.families:
                continue
            modes = range(1, W + 1) if pair[0] == pair[1] else range(-W, W + 1)
            for m in modes:
                self.index[(pair, m)] = len(self.keys)
                self.keys.append((pair, m))

    @property
    def size(self) -> int:
        return len(self.keys)

    def form(self, x: GeneratorLabel, y: GeneratorLabel) -> Dict[int, int]:
        """c(x, y) as a linear form in the unknowns."""
        if x.is_central or y.is_central or x.mode + y.mode != 0:
            return {}
        fx, fy = x.family, y.family
        if fx not in self.families or fy not in self.families:
            return {}
        m = x.mode
        if abs(m) > self.window:
            raise ValueError(f"mode {m} outside window {self.window}")
        if fx == fy:
            if m == 0:
                return {}
            if m > 0:
                return {self.index[((fx, fx), m)]: 1}
            return {self.index[((fx, fx), -m)]: -1}
        if FAMILIES.index(fx) < FAMILIES.index(fy):
            return {self.index[((fx, fy), m)]: 1}
        return {self.index[((fy, fx), -m)]: -1}

    def interior(self, margin: int = 2) -> List[int]:
        return [i for i, (_, m) in enumerate(self.keys) if abs(m) <= self.window - margin]


TripleFilter = Callable[[GeneratorLabel, GeneratorLabel, GeneratorLabel], bool]


def _identity_row(ans: CocycleAnsatz, x, y, z) -> Dict[int, Fraction]:
    row: Dict[int, Fraction] = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        for w, coeff in bracket_labels(a, b):
            if w.is_central:
                continue
            for k, v in ans.form(w, c).items():
                row[k] = row.get(k, 0) + coeff * v
    return {k: v for k, v in row.items() if v}


def build_constraints(
    window: int,
    families: Sequence[str] = FAMILIES,
    keep: Optional[TripleFilter] = None,
) -> Tuple[CocycleAnsatz, List[Dict[int, Fraction]]]:
    """One sparse row per generator triple with modes summing to zero."""
    if window < 1:
        raise ValueError("window must be positive")
    ans = CocycleAnsatz(window, tuple(families))
    gens = generators(window, families)
    rows = []
    for x, y, z in combinations_with_replacement(gens, 3):
        if x.mode + y.mode + z.mode != 0:
            continue
        if keep is not None and not keep(x, y, z):
            continue
        row = _identity_row(ans, x, y, z)
        if row:
            rows.append(row)
    return ans, rows


def coboundaries(ans: CocycleAnsatz) -> List[List[Fraction]]:
    """c(X, Y) = lambda([X, Y]) for lambda dual to each degree-0 label."""
    out = []
    for f in ans.families:
        z0 = GeneratorLabel(f, 0)
        v = [Fraction(0)] * ans.size
        for i, ((fx, fy), m) in enumerate(ans.keys):
            for w, c in bracket_labels(GeneratorLabel(fx, m), GeneratorLabel(fy, -m)):
                if w == z0:
                    v[i] += c
        out.append(v)
    return out


def satisfies(ans: CocycleAnsatz, rows: Sequence[Dict[int, Fraction]], v: Sequence[Fraction]) -> bool:
    return all(sum(c * v[k] for k, c in row.items()) == 0 for row in rows)


@dataclass
class CocycleSolution:
    window: int
    families: Tuple[str, ...]
    nullity: int
    coboundary_rank: int
    dimension: int
    representatives: List[Dict[Tuple[str, int], Fraction]]
    constraints: int
    unknowns: int

    def to_json(self) -> dict:
        reps = []
        for rep in self.representatives:
            reps.append(
                [{"pair": p, "mode": m, "value": format_rational(v)} for (p, m), v in sorted(rep.items())]
            )
        return {
            "window": self.window,
            "families": list(self.families),
            "unknowns": self.unknowns,
            "constraints": self.constraints,
            "nullity": self.nullity,
            "coboundary_rank": self.coboundary_rank,
            "dimension": self.dimension,
            "representatives": reps,
        }


def _project(vs: Sequence[Sequence[Fraction]], coords: Sequence[int]) -> List[List[Fraction]]:
    return [[v[i] for i in coords] for v in vs]


def solve_cocycles(
    window: int,
    families: Sequence[str] = FAMILIES,
    keep: Optional[TripleFilter] = None,
    margin: int = 2,
) -> CocycleSolution:
    """Cocycle space modulo coboundaries, measured on interior modes.

    Representatives are normalized so that they vanish on the pivot
    coordinates of the coboundary span and are in reduced echelon form, which
    makes them canonical for a given window.
    """
    ans, rows = build_constraints(window, families, keep)
    elim = SparseEliminator(ans.size)
    for row in rows:
        elim.add(row)
    null = elim.nullspace()
    cob = coboundaries(ans)
    interior = ans.interior(margin)
    n_int = _project(null, interior)
    b_int = _project(cob, interior)
    b_red, b_piv = rref(b_int, len(interior)) if b_int else ([], [])
    # strip coboundary directions, then echelonize what is left
    stripped = []
    for v in n_int:
        v = list(v)
        for row, p in zip(b_red, b_piv):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        stripped.append(v)
    reps_red, _ = rref(stripped, len(interior)) if stripped else ([], [])
    reps = []
    for v in reps_red:
        rep = {}
        for coord, val in zip(interior, v):
            if val:
                (pair, m) = ans.keys[coord]
                rep[(pair_name(pair), m)] = val
        reps.append(rep)
    n_rank = len(rref(n_int, len(interior))[1]) if n_int else 0
    return CocycleSolution(
        window=window,
        families=tuple(families),
        nullity=len(null),
        coboundary_rank=len(b_piv),
        dimension=n_rank - len(b_piv),
        representatives=reps,
        constraints=len(rows),
        unknowns=ans.size,
    )


def _involves_j_and_p(x, y, z) -> bool:
    fams = {x.family, y.family, z.family}
    return "J" in fams and bool(fams & {"P1", "P2"})


def _is_l_p_p(x, y, z) -> bool:
    fams = sorted(g.family for g in (x, y, z))
    return fams[0] == "L" and fams[1].startswith("P") and fams[2].startswith("P")


# constraint families that can be switched off to see which ones do the work
ABLATIONS: Dict[str, TripleFilter] = {
    "jp": _involves_j_and_p,
    "lpp": _is_l_p_p,
}


def exotic_check(window: int, ablate: Optional[str] = None, margin: int = 2) -> bool:
    """True iff no cocycle has a nonzero P-P component on interior modes.

    ``ablate`` names a constraint family from ``ABLATIONS`` to drop first.
    """
    keep = None
    if ablate is not None:
        drop = ABLATIONS[ablate]
        keep = lambda x, y, z: not drop(x, y, z)
    ans, rows = build_constraints(window, keep=keep)
    elim = SparseEliminator(ans.size)
    for row in rows:
        elim.add(row)
    pp = [
        i
        for i, (pair, m) in enumerate(ans.keys)
        if pair in (("P1", "P2"), ("P1", "P1"), ("P2", "P2")) and abs(m) <= window - margin
    ]
    return all(v[i] == 0 for v in elim.nullspace() for i in pp)

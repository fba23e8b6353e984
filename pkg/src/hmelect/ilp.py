"""Exact feasibility/optimization for integer linear programs over boxes.

Every variable must carry finite integer bounds.  The solver runs branch and
bound on top of an exact rational simplex (bounded-variable, two-phase,
Bland's rule), so results are certified by construction: any assignment it
returns is re-verified against the instance before being handed back.

This is deliberately not a fixed-dimension polynomial-time method; it is an
exact desk-scale solver with deterministic branching.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

LE, GE, EQ = "<=", ">=", "=="

DEFAULT_NODE_LIMIT = 200_000


class ILPError(ValueError):
    """Raised for malformed instances."""


class ResourceLimitError(RuntimeError):
    """Raised when the branch-and-bound node budget is exhausted."""


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[int, ...]
    relation: str
    rhs: int

    def __post_init__(self) -> None:
        if self.relation not in (LE, GE, EQ):
            raise ILPError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))


@dataclass(frozen=True)
class ILPInstance:
    """Bounded integer variables, linear constraints, optional objective."""

    variables: tuple[tuple[str, int, int], ...]  # (name, lower, upper)
    constraints: tuple[Constraint, ...]
    objective: Optional[tuple[tuple[int, ...], str]] = None  # (coeffs, "min"/"max")

    def __post_init__(self) -> None:
        nvars = len(self.variables)
        for name, lo, hi in self.variables:
            if not isinstance(lo, int) or not isinstance(hi, int):
                raise ILPError(f"variable {name!r} must have finite integer bounds")
            if lo > hi:
                raise ILPError(f"variable {name!r} has empty bounds [{lo}, {hi}]")
        for con in self.constraints:
            if len(con.coeffs) != nvars:
                raise ILPError("constraint arity does not match variable count")
        if self.objective is not None:
            coeffs, direction = self.objective
            if len(coeffs) != nvars:
                raise ILPError("objective arity does not match variable count")
            if direction not in ("min", "max"):
                raise ILPError(f"unknown objective direction {direction!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class ILPResult:
    status: str  # "optimal" | "feasible" | "infeasible"
    assignment: Optional[tuple[int, ...]] = None
    objective_value: Optional[int] = None

    def __bool__(self) -> bool:
        return self.status != "infeasible"


def verify(inst: ILPInstance, assignment: Sequence[int]) -> bool:
    """Exact check of all bounds and constraints."""
    if len(assignment) != inst.nvars:
        raise ILPError("assignment length does not match variable count")
    for (name, lo, hi), value in zip(inst.variables, assignment):
        if not (lo <= value <= hi):
            return False
    for con in inst.constraints:
        lhs = sum(c * x for c, x in zip(con.coeffs, assignment))
        if con.relation == LE and not lhs <= con.rhs:
            return False
        if con.relation == GE and not lhs >= con.rhs:
            return False
        if con.relation == EQ and lhs != con.rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Exact bounded-variable simplex
# ---------------------------------------------------------------------------

_BASIC, _AT_LOWER, _AT_UPPER = 0, 1, 2


class _Simplex:
    """max c.y  s.t.  A y (<=|==) b,  0 <= y_j <= u_j  (u_j may be None).

    Dense tableau over Fractions; Bland's rule throughout, so the iteration
    is finite and fully deterministic.
    """

    def __init__(
        self,
        ncols: int,
        uppers: list[Optional[Fraction]],
        rows: list[tuple[list[Fraction], str, Fraction]],
    ):
        self.n_struct = ncols
        self.upper: list[Optional[Fraction]] = list(uppers)
        self.tab: list[list[Fraction]] = []
        self.basis: list[int] = []
        self.xb: list[Fraction] = []
        self.status = [_AT_LOWER] * ncols
        zero = Fraction(0)
        pending = [(list(coeffs), rel, rhs) for coeffs, rel, rhs in rows]
        # Column layout: structurals, then one slack per <= row, then artificials.
        n_slacks = sum(1 for _, rel, _ in pending if rel == LE)
        slack_base = ncols
        art_base = ncols + n_slacks
        si = 0
        arts = []
        for row, rel, rhs in pending:
            full = row + [zero] * n_slacks
            if rel == LE:
                full[slack_base + si] = Fraction(1)
                this_slack = slack_base + si
                si += 1
            else:
                this_slack = None
            if rhs < 0:
                full = [-v for v in full]
                rhs = -rhs
            needs_art = True
            if this_slack is not None and full[this_slack] == 1:
                # Slack can start basic at rhs >= 0.
                needs_art = False
            arts.append(needs_art)
            self.tab.append((full, rhs))
        total_arts = sum(arts)
        self.n_total = art_base + total_arts
        self.upper.extend([None] * (n_slacks + total_arts))
        self.status.extend([_AT_LOWER] * (n_slacks + total_arts))
        self.art_base = art_base
        ai = 0
        new_tab = []
        for (full, rhs), needs_art in zip(self.tab, arts):
            full = full + [zero] * total_arts
            if needs_art:
                col = art_base + ai
                full[col] = Fraction(1)
                ai += 1
                self.basis.append(col)
            else:
                basic_col = next(
                    j for j in range(slack_base, art_base) if full[j] == 1
                )
                self.basis.append(basic_col)
            new_tab.append(full)
            self.xb.append(Fraction(rhs))
        self.tab = new_tab
        for col in self.basis:
            self.status[col] = _BASIC
        self.obj: list[Fraction] = [zero] * self.n_total
        self.objshift = Fraction(0)

    # -- pivoting --------------------------------------------------------

    def _set_objective(self, coeffs: list[Fraction]) -> None:
        zero = Fraction(0)
        obj = list(coeffs) + [zero] * (self.n_total - len(coeffs))
        # Reduce by current basis: obj := obj - sum over rows of c_B * row.
        for i, col in enumerate(self.basis):
            cb = obj[col]
            if cb:
                row = self.tab[i]
                for j in range(self.n_total):
                    if row[j]:
                        obj[j] -= cb * row[j]
        self.obj = obj

    def _value_of(self, j: int) -> Fraction:
        if self.status[j] == _AT_LOWER:
            return Fraction(0)
        if self.status[j] == _AT_UPPER:
            up = self.upper[j]
            assert up is not None
            return up
        return self.xb[self.basis.index(j)]

    def _entering(self, banned: int) -> Optional[int]:
        for j in range(banned):
            st = self.status[j]
            if st == _BASIC:
                continue
            up = self.upper[j]
            if up == 0:
                continue  # fixed variable, cannot move
            if st == _AT_LOWER and self.obj[j] > 0:
                return j
            if st == _AT_UPPER and self.obj[j] < 0:
                return j
        return None

    def _iterate(self, banned: int) -> None:
        while True:
            j = self._entering(banned)
            if j is None:
                return
            increase = self.status[j] == _AT_LOWER
            # Ratio test: how far can the entering variable move?
            best_t: Optional[Fraction] = None
            best_key: Optional[tuple] = None
            best_row = -1
            leave_to_upper = False
            span = self.upper[j]
            if span is not None:
                best_t, best_key, best_row = span, (span, j), -2
            for i in range(len(self.tab)):
                w = self.tab[i][j]
                if not w:
                    continue
                delta = w if increase else -w
                # Basic value changes by -t * delta.
                if delta > 0:
                    t = self.xb[i] / delta
                    hits_upper = False
                else:
                    ub = self.upper[self.basis[i]]
                    if ub is None:
                        continue
                    t = (ub - self.xb[i]) / (-delta)
                    hits_upper = True
                key = (t, self.basis[i])
                if best_key is None or key < best_key:
                    best_key, best_t, best_row = key, t, i
                    leave_to_upper = hits_upper
            if best_t is None:
                raise ILPError("LP relaxation is unbounded; bounds are required")
            t = best_t
            # Move the entering variable and update basic values.
            for i in range(len(self.tab)):
                w = self.tab[i][j]
                if not w:
                    continue
                delta = w if increase else -w
                self.xb[i] -= t * delta
            enter_value = t if increase else (self.upper[j] - t)
            gain = self.obj[j] * (t if increase else -t)
            self.objshift += gain
            if best_row == -2:
                # Bound flip: the entering variable traverses its whole span.
                self.status[j] = _AT_UPPER if increase else _AT_LOWER
                continue
            leaving = self.basis[best_row]
            self.status[leaving] = _AT_UPPER if leave_to_upper else _AT_LOWER
            self.basis[best_row] = j
            self.status[j] = _BASIC
            self.xb[best_row] = enter_value
            # Row reduction.
            row = self.tab[best_row]
            piv = row[j]
            if piv != 1:
                inv = Fraction(1) / piv
                self.tab[best_row] = row = [v * inv for v in row]
            for i in range(len(self.tab)):
                if i == best_row:
                    continue
                f = self.tab[i][j]
                if f:
                    tr = self.tab[i]
                    self.tab[i] = [a - f * b for a, b in zip(tr, row)]
            f = self.obj[j]
            if f:
                self.obj = [a - f * b for a, b in zip(self.obj, row)]

    def _drive_out_artificials(self) -> None:
        drop_rows = []
        for i in range(len(self.tab)):
            if self.basis[i] < self.art_base:
                continue
            assert self.xb[i] == 0, "artificial basic at nonzero value"
            row = self.tab[i]
            col = None
            for j in range(self.art_base):
                if self.status[j] == _BASIC or row[j] == 0:
                    continue
                if self.status[j] == _AT_LOWER:
                    col = j
                    break
                if col is None:
                    col = j
            if col is None:
                self.status[self.basis[i]] = _AT_LOWER
                drop_rows.append(i)
                continue
            leaving = self.basis[i]
            self.status[leaving] = _AT_LOWER
            # The swap keeps the current point: the incoming variable stays at
            # whichever bound it occupied.
            self.xb[i] = Fraction(0) if self.status[col] == _AT_LOWER else self.upper[col]
            self.basis[i] = col
            self.status[col] = _BASIC
            piv = row[col]
            if piv != 1:
                inv = Fraction(1) / piv
                self.tab[i] = row = [v * inv for v in row]
            for k in range(len(self.tab)):
                if k == i:
                    continue
                f = self.tab[k][col]
                if f:
                    tr = self.tab[k]
                    self.tab[k] = [a - f * b for a, b in zip(tr, row)]
        for i in reversed(drop_rows):
            del self.tab[i], self.basis[i], self.xb[i]

    def solve(self, objective: list[Fraction]) -> Optional[tuple[Fraction, list[Fraction]]]:
        """Returns (optimal value, point) or None when infeasible."""
        if self.art_base < self.n_total:
            phase1 = [Fraction(0)] * self.n_total
            for j in range(self.art_base, self.n_total):
                phase1[j] = Fraction(-1)
            self.objshift = Fraction(0)
            self._set_objective(phase1)
            base = sum(
                self.xb[i] for i in range(len(self.tab)) if self.basis[i] >= self.art_base
            )
            self._iterate(self.art_base)
            if self.objshift != base:  # could not clear all artificials
                return None
            self._drive_out_artificials()
        self.objshift = Fraction(0)
        self._set_objective([Fraction(v) for v in objective])
        self._iterate(self.art_base)
        value = Fraction(0)
        point = []
        for j in range(self.n_struct):
            v = self._value_of(j)
            point.append(v)
            value += Fraction(objective[j]) * v
        return value, point


def _lp_relaxation(
    lo: list[int],
    hi: list[int],
    constraints: Sequence[Constraint],
    objective: list[int],
) -> Optional[tuple[Fraction, list[Fraction]]]:
    """Solve the LP relaxation over the box [lo, hi] (shifted to y = x - lo)."""
    n = len(lo)
    uppers: list[Optional[Fraction]] = [Fraction(hi[j] - lo[j]) for j in range(n)]
    rows = []
    for con in constraints:
        shift = sum(c * l for c, l in zip(con.coeffs, lo))
        rhs = Fraction(con.rhs - shift)
        coeffs = [Fraction(c) for c in con.coeffs]
        if con.relation == LE:
            rows.append((coeffs, LE, rhs))
        elif con.relation == GE:
            rows.append(([-c for c in coeffs], LE, -rhs))
        else:
            rows.append((coeffs, EQ, rhs))
    sx = _Simplex(n, uppers, rows)
    out = sx.solve([Fraction(c) for c in objective])
    if out is None:
        return None
    value, point = out
    shift_val = sum(Fraction(c) * l for c, l in zip(objective, lo))
    return value + shift_val, [p + l for p, l in zip(point, lo)]


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _propagate(
    lo: list[int], hi: list[int], constraints: Sequence[Constraint]
) -> bool:
    """Constraint-wise bound tightening; False when the box becomes empty."""
    ineqs: list[tuple[tuple[int, ...], int]] = []
    for con in constraints:
        if con.relation in (LE, EQ):
            ineqs.append((con.coeffs, con.rhs))
        if con.relation in (GE, EQ):
            ineqs.append((tuple(-c for c in con.coeffs), -con.rhs))
    for _round in range(12):
        changed = False
        for coeffs, rhs in ineqs:
            mins = 0
            for c, l, h in zip(coeffs, lo, hi):
                if c > 0:
                    mins += c * l
                elif c < 0:
                    mins += c * h
            for j, c in enumerate(coeffs):
                if c == 0:
                    continue
                rest = mins - (c * lo[j] if c > 0 else c * hi[j])
                budget = rhs - rest
                if c > 0:
                    new_hi = budget // c
                    if new_hi < hi[j]:
                        hi[j] = new_hi
                        changed = True
                else:
                    new_lo = _ceil_div(-budget, -c)
                    if new_lo > lo[j]:
                        lo[j] = new_lo
                        changed = True
                if lo[j] > hi[j]:
                    return False
        if not changed:
            break
    return True


def solve(
    inst: ILPInstance,
    *,
    node_limit: int = DEFAULT_NODE_LIMIT,
    lexicographic: bool = True,
) -> ILPResult:
    """Exact solve: feasibility when no objective, else certified optimum.

    Branching is on the most fractional LP variable, lower branch first, so
    identical instances always return identical witnesses.  When an objective
    is present and ``lexicographic`` is set, the returned assignment is the
    lexicographically smallest one attaining the optimum.
    """
    n = inst.nvars
    maximize = True
    if inst.objective is None:
        obj = [0] * n
    else:
        coeffs, direction = inst.objective
        obj = list(coeffs)
        if direction == "min":
            obj = [-c for c in obj]
            maximize = False

    best_value: Optional[Fraction] = None
    best_point: Optional[tuple[int, ...]] = None
    nodes = 0
    feasibility_only = inst.objective is None

    root_lo = [lo for _, lo, _ in inst.variables]
    root_hi = [hi for _, _, hi in inst.variables]
    stack = [(root_lo, root_hi)]
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        if nodes > node_limit:
            raise ResourceLimitError(f"node budget {node_limit} exhausted")
        if not _propagate(lo, hi, inst.constraints):
            continue
        relax = _lp_relaxation(lo, hi, inst.constraints, obj)
        if relax is None:
            continue
        value, point = relax
        if best_value is not None and value <= best_value:
            continue
        frac_j = -1
        frac_dist = Fraction(0)
        for j, v in enumerate(point):
            f = v - (v.numerator // v.denominator)
            if f:
                dist = min(f, 1 - f)
                if dist > frac_dist:
                    frac_dist = dist
                    frac_j = j
        if frac_j < 0:
            ipoint = tuple(int(v) for v in point)
            ival = sum(c * x for c, x in zip(obj, ipoint))
            if best_value is None or ival > best_value:
                best_value = Fraction(ival)
                best_point = ipoint
                if feasibility_only:
                    break
            continue
        floor_v = point[frac_j].numerator // point[frac_j].denominator
        up_lo = list(lo)
        up_lo[frac_j] = floor_v + 1
        down_hi = list(hi)
        down_hi[frac_j] = floor_v
        stack.append((up_lo, list(hi)))   # explored second
        stack.append((list(lo), down_hi))  # lower branch first

    if best_point is None:
        return ILPResult("infeasible")
    if feasibility_only:
        assert verify(inst, best_point)
        return ILPResult("feasible", best_point)
    opt = int(best_value) if maximize else -int(best_value)
    if lexicographic:
        best_point = _lex_smallest(inst, opt, node_limit)
    assert verify(inst, best_point)
    check = sum(c * x for c, x in zip(inst.objective[0], best_point))
    assert check == opt
    return ILPResult("optimal", best_point, opt)


def _lex_smallest(inst: ILPInstance, opt: int, node_limit: int) -> tuple[int, ...]:
    """Lexicographically smallest assignment attaining objective value opt."""
    coeffs, _direction = inst.objective
    constraints = list(inst.constraints) + [Constraint(tuple(coeffs), EQ, opt)]
    fixed: list[int] = []
    variables = list(inst.variables)
    for j in range(inst.nvars):
        sub_vars = []
        for i, (name, lo, hi) in enumerate(variables):
            if i < j:
                sub_vars.append((name, fixed[i], fixed[i]))
            else:
                sub_vars.append((name, lo, hi))
        unit = tuple(1 if i == j else 0 for i in range(inst.nvars))
        sub = ILPInstance(tuple(sub_vars), tuple(constraints), (unit, "min"))
        res = solve(sub, node_limit=node_limit, lexicographic=False)
        assert res.status == "optimal"
        fixed.append(res.assignment[j])
    return tuple(fixed)


# ---------------------------------------------------------------------------
# JSON debugging format (all integers as decimal strings)
# ---------------------------------------------------------------------------


def ilp_to_json(inst: ILPInstance) -> dict:
    data: dict = {
        "variables": [
            {"name": name, "lower": str(lo), "upper": str(hi)}
            for name, lo, hi in inst.variables
        ],
        "constraints": [
            {
                "coeffs": [str(c) for c in con.coeffs],
                "relation": con.relation,
                "rhs": str(con.rhs),
            }
            for con in inst.constraints
        ],
    }
    if inst.objective is not None:
        coeffs, direction = inst.objective
        data["objective"] = {"coeffs": [str(c) for c in coeffs], "direction": direction}
    return data


def ilp_from_json(data: Mapping) -> ILPInstance:
    variables = tuple(
        (v["name"], int(v["lower"]), int(v["upper"])) for v in data["variables"]
    )
    constraints = tuple(
        Constraint(tuple(int(c) for c in con["coeffs"]), con["relation"], int(con["rhs"]))
        for con in data["constraints"]
    )
    objective = None
    if "objective" in data:
        objective = (
            tuple(int(c) for c in data["objective"]["coeffs"]),
            data["objective"]["direction"],
        )
    return ILPInstance(variables, constraints, objective)


def dumps(inst: ILPInstance) -> str:
    return json.dumps(ilp_to_json(inst), sort_keys=True)


def loads(text: str) -> ILPInstance:
    return ilp_from_json(json.loads(text))

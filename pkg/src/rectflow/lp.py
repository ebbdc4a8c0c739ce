"""Self-contained linear-programming solver.

Minimizes a linear objective under EQ/LE/GE row constraints and per-variable
[lower, upper] bounds (upper may be infinite).  The implementation is a
dense two-phase simplex with Bland's anti-cycling rule: the problems this
package produces have one variable per graph edge, i.e. tens of variables,
so robustness and determinism matter far more than sparsity.

Internally the problem is shifted to y = x - lower >= 0, finite upper
bounds become extra LE rows, and negative right-hand sides are flipped
before slack/artificial columns are added.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EQ = "="
LE = "<="
GE = ">="

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
UNBOUNDED = "UNBOUNDED"

PIVOT_TOL = 1e-9
DEFAULT_TOL = 1e-7


@dataclass
class Row:
    """One linear constraint: coeffs . x  (relation)  rhs."""

    coeffs: np.ndarray
    relation: str  # EQ, LE or GE
    rhs: float

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.relation not in (EQ, LE, GE):
            raise ValueError(f"unknown relation {self.relation!r}")
        self.rhs = float(self.rhs)


@dataclass
class LinearProgram:
    """Minimization problem over num_vars variables."""

    num_vars: int
    objective: np.ndarray
    rows: list[Row] = field(default_factory=list)
    lower: np.ndarray | None = None  # default 0
    upper: np.ndarray | None = None  # default +inf
    var_names: list[str] | None = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        self.lower = (
            np.zeros(self.num_vars) if self.lower is None else np.asarray(self.lower, dtype=float)
        )
        self.upper = (
            np.full(self.num_vars, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)
        )

    def check(self) -> None:
        """Reject malformed programs before solving."""
        if self.num_vars < 1:
            raise ValueError("program must have at least one variable")
        for name, vec in (("objective", self.objective), ("lower", self.lower), ("upper", self.upper)):
            if vec.shape != (self.num_vars,):
                raise ValueError(f"{name} has shape {vec.shape}, expected ({self.num_vars},)")
        for i, row in enumerate(self.rows):
            if row.coeffs.shape != (self.num_vars,):
                raise ValueError(f"row {i} has {row.coeffs.shape[0]} coefficients, expected {self.num_vars}")
        if not np.all(np.isfinite(self.lower)):
            raise ValueError("lower bounds must be finite")
        if np.any(self.lower > self.upper):
            bad = int(np.argmax(self.lower > self.upper))
            raise ValueError(f"variable {bad} has lower bound above upper bound")
        if self.var_names is not None and len(self.var_names) != self.num_vars:
            raise ValueError("var_names length does not match num_vars")


@dataclass
class LPOutcome:
    status: str  # OPTIMAL, INFEASIBLE or UNBOUNDED
    x: np.ndarray | None = None
    objective_value: float | None = None
    # Largest single-constraint residual left at the end of phase 1.
    infeasibility_certificate: float | None = None


def solve_lp(lp: LinearProgram, tol: float = DEFAULT_TOL) -> LPOutcome:
    """Solve to optimality or report INFEASIBLE / UNBOUNDED.

    Deterministic for a fixed input: Bland's rule fixes every pivot choice.
    """
    lp.check()
    n = lp.num_vars

    # Shift out the lower bounds: y = x - lower >= 0.
    rows_a: list[np.ndarray] = []
    rows_rel: list[str] = []
    rows_b: list[float] = []
    for row in lp.rows:
        rows_a.append(row.coeffs.copy())
        rows_rel.append(row.relation)
        rows_b.append(row.rhs - float(row.coeffs @ lp.lower))
    for j in range(n):
        if np.isfinite(lp.upper[j]):
            a = np.zeros(n)
            a[j] = 1.0
            rows_a.append(a)
            rows_rel.append(LE)
            rows_b.append(float(lp.upper[j] - lp.lower[j]))

    # Flip rows so every right-hand side is non-negative.
    for i in range(len(rows_a)):
        if rows_b[i] < 0:
            rows_a[i] = -rows_a[i]
            rows_b[i] = -rows_b[i]
            if rows_rel[i] == LE:
                rows_rel[i] = GE
            elif rows_rel[i] == GE:
                rows_rel[i] = LE

    m = len(rows_a)
    n_slack = sum(1 for r in rows_rel if r == LE)
    n_surp = sum(1 for r in rows_rel if r == GE)
    n_art = sum(1 for r in rows_rel if r in (GE, EQ))
    slack0, surp0, art0 = n, n + n_slack, n + n_slack + n_surp
    width = n + n_slack + n_surp + n_art

    if m == 0:
        # Only the trivial bounds remain; the minimum sits at a bound.
        x = np.where(lp.objective > 0, lp.lower, np.where(lp.objective < 0, lp.upper, lp.lower))
        if not np.all(np.isfinite(x)):
            return LPOutcome(UNBOUNDED)
        return LPOutcome(OPTIMAL, x=x, objective_value=float(lp.objective @ x))

    T = np.zeros((m + 1, width + 1))
    basis = [-1] * m
    si = ti = ai = 0
    for i in range(m):
        T[i, :n] = rows_a[i]
        T[i, -1] = rows_b[i]
        if rows_rel[i] == LE:
            T[i, slack0 + si] = 1.0
            basis[i] = slack0 + si
            si += 1
        elif rows_rel[i] == GE:
            T[i, surp0 + ti] = -1.0
            T[i, art0 + ai] = 1.0
            basis[i] = art0 + ai
            ti += 1
            ai += 1
        else:
            T[i, art0 + ai] = 1.0
            basis[i] = art0 + ai
            ai += 1

    # Phase 1: minimize the sum of artificials.
    cost1 = np.zeros(width)
    cost1[art0:] = 1.0
    _install_cost_row(T, basis, cost1)
    status = _simplex(T, basis)
    if status != OPTIMAL:  # pragma: no cover - phase 1 is always bounded
        raise RuntimeError(f"phase 1 ended {status}")
    phase1_obj = -T[-1, -1]
    b_scale = max(1.0, float(np.max(np.abs(rows_b))) if rows_b else 1.0)
    if phase1_obj > tol * b_scale:
        residual = max(
            (float(T[i, -1]) for i in range(m) if basis[i] >= art0),
            default=phase1_obj,
        )
        return LPOutcome(INFEASIBLE, infeasibility_certificate=residual)

    # Drive leftover artificials out of the basis; drop redundant rows.
    drop_rows: list[int] = []
    for i in range(m):
        if basis[i] < art0:
            continue
        pivot_col = next(
            (j for j in range(art0) if abs(T[i, j]) > PIVOT_TOL),
            None,
        )
        if pivot_col is None:
            drop_rows.append(i)
        else:
            _pivot(T, i, pivot_col)
            basis[i] = pivot_col

    keep = [i for i in range(m) if i not in drop_rows]
    col_keep = list(range(art0)) + [width]
    T = T[np.ix_(keep + [m], col_keep)]
    basis = [basis[i] for i in keep]
    m = len(basis)

    # Phase 2: minimize the real objective over the shifted variables.
    cost2 = np.zeros(art0)
    cost2[:n] = lp.objective
    _install_cost_row(T, basis, cost2)
    status = _simplex(T, basis)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)

    y = np.zeros(art0)
    for i, bj in enumerate(basis):
        y[bj] = T[i, -1]
    x = lp.lower + y[:n]
    # Sweep float dust off the bounds; shifts are below the feasibility tol.
    x = np.minimum(np.maximum(x, lp.lower), lp.upper)
    return LPOutcome(OPTIMAL, x=x, objective_value=float(lp.objective @ x))


def _install_cost_row(T: np.ndarray, basis: list[int], cost: np.ndarray) -> None:
    """Write reduced costs for `cost` into the bottom row of the tableau."""
    T[-1, :] = 0.0
    T[-1, : cost.shape[0]] = cost
    for i, bj in enumerate(basis):
        cj = cost[bj] if bj < cost.shape[0] else 0.0
        if cj != 0.0:
            T[-1, :] -= cj * T[i, :]


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row, :] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r, :] -= T[r, col] * T[row, :]


def _simplex(T: np.ndarray, basis: list[int]) -> str:
    """Run minimization pivots to optimality; Bland's rule throughout."""
    m = T.shape[0] - 1
    max_iter = 200 * (T.shape[0] + T.shape[1])
    for _ in range(max_iter):
        # Entering: lowest-index column with a negative reduced cost.
        entering = -1
        for j in range(T.shape[1] - 1):
            if T[-1, j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        # Leaving: tightest ratio; ties broken by lowest basis index.
        best_ratio = None
        leaving = -1
        for i in range(m):
            a = T[i, entering]
            if a > PIVOT_TOL:
                ratio = T[i, -1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio - PIVOT_TOL
                    or (abs(ratio - best_ratio) <= PIVOT_TOL and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return UNBOUNDED
        _pivot(T, leaving, entering)
        basis[leaving] = entering
    raise RuntimeError("simplex iteration limit exceeded")  # pragma: no cover


def format_lp(lp: LinearProgram) -> str:
    """Plain-text dump of the program, for debugging and CLI inspection."""
    names = lp.var_names or [f"x{j}" for j in range(lp.num_vars)]

    def term(c: float, name: str) -> str:
        if c == 1.0:
            return name
        if c == -1.0:
            return f"-{name}"
        return f"{c:g}*{name}"

    def combo(coeffs: np.ndarray) -> str:
        parts = [term(float(c), names[j]) for j, c in enumerate(coeffs) if c != 0.0]
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    lines = [f"minimize {combo(lp.objective)}", "subject to"]
    for row in lp.rows:
        lines.append(f"  {combo(row.coeffs)} {row.relation} {row.rhs:g}")
    lines.append("bounds")
    for j in range(lp.num_vars):
        hi = "inf" if not np.isfinite(lp.upper[j]) else f"{lp.upper[j]:g}"
        lines.append(f"  {lp.lower[j]:g} <= {names[j]} <= {hi}")
    return "\n".join(lines) + "\n"

"""
Polyhedral utilities for three-user rate regions.

Regions are bounded by subset-sum constraints sum_{k in V} R_k <= b_V plus
R >= 0. Everything works in floating point with an absolute tolerance of 1e-9.
"""
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from sideinfo.config_algebra import RECEIVERS, nonempty_subsets

logger = logging.getLogger('region')

TOL = 1e-9
SINGULAR_TOL = 1e-12
VERTEX_CHUNK = 2048
REDUNDANCY_LP_ROWS = 48


class UnboundedRegionError(ValueError):
    pass


class FourierMotzkinError(ValueError):
    pass


def indicator(members, dim=3):
    row = np.zeros(dim)
    for k in members:
        row[k - 1] = 1.0
    return row


@dataclass(frozen=True)
class SubsetBoundRegion:
    bounds: dict

    def __post_init__(self):
        cleaned = {}
        for members, value in self.bounds.items():
            members = frozenset(members)
            if not members:
                continue
            value = float(value)
            if value < 0:
                raise ValueError(f'Bound for {sorted(members)} is negative: {value}')
            cleaned[members] = min(value, cleaned.get(members, np.inf))
        object.__setattr__(self, 'bounds', cleaned)

    def bound(self, members):
        return self.bounds.get(frozenset(members), np.inf)

    def finite_bounds(self):
        return {V: b for V, b in self.bounds.items() if np.isfinite(b)}

    def halfspaces(self):
        """(A, b) with the finite subset rows first, then -R_k <= 0."""
        finite = sorted(self.finite_bounds().items(), key=lambda item: (len(item[0]), sorted(item[0])))
        rows = [indicator(V) for V, _ in finite] + [-indicator({k}) for k in RECEIVERS]
        rhs = [b for _, b in finite] + [0.0, 0.0, 0.0]
        return np.array(rows), np.array(rhs)

    def is_bounded(self):
        covered = set()
        for members in self.finite_bounds():
            covered |= members
        return covered >= set(RECEIVERS)

    def is_monotone_consistent(self):
        """b_V never exceeds the sum over a partition of V into bounded parts (checked, not forced)."""
        for V, b in self.finite_bounds().items():
            for part in nonempty_subsets(tuple(sorted(V))):
                rest = V - part
                if rest and b > self.bound(part) + self.bound(rest) + TOL:
                    return False
        return True


@dataclass(frozen=True)
class LinearInequalitySystem:
    """Rows ``matrix @ x <= rhs`` over named variables."""
    variables: tuple
    matrix: np.ndarray
    rhs: np.ndarray

    @classmethod
    def from_rows(cls, variables, rows):
        variables = tuple(variables)
        position = {name: k for k, name in enumerate(variables)}
        matrix = np.zeros((len(rows), len(variables)))
        rhs = np.zeros(len(rows))
        for r, (coefficients, bound) in enumerate(rows):
            for name, value in coefficients.items():
                matrix[r, position[name]] += value
            rhs[r] = bound
        return cls(variables, matrix, rhs)

    def rows(self):
        for coefficients, bound in zip(self.matrix, self.rhs):
            yield {name: c for name, c in zip(self.variables, coefficients) if c != 0}, bound

    def __len__(self):
        return len(self.rhs)

    def is_infeasible(self):
        zero = np.all(np.abs(self.matrix) <= TOL, axis=1)
        return bool(np.any(zero & (self.rhs < -TOL)))

    def satisfied_by(self, point, tol=TOL):
        x = np.array([point[name] for name in self.variables], dtype=float)
        return bool(np.all(self.matrix @ x <= self.rhs + tol))


def _prune(matrix, rhs, nonnegative=False):
    """
    Drop trivial rows and keep the tightest of each family of parallel rows.

    With ``nonnegative`` every variable is known to be >= 0, so a row is also
    dropped when one other row has coefficients at least as large and a bound
    at most as large. Rows of the form -x <= 0 are always kept.
    """
    scale = np.max(np.abs(matrix), axis=1) if matrix.shape[1] else np.zeros(len(rhs))
    trivial = scale <= TOL
    if np.any(trivial & (rhs < -TOL)):
        worst = float(np.min(rhs[trivial]))
        return np.zeros((1, matrix.shape[1])), np.array([worst]), True

    tightest = {}
    for row, bound, s in zip(matrix[~trivial], rhs[~trivial], scale[~trivial]):
        normalized = np.round(row / s, 12) + 0.0
        key = tuple(normalized)
        value = bound / s
        if key not in tightest or value < tightest[key][1]:
            tightest[key] = (normalized, value)
    if not tightest:
        return np.zeros((0, matrix.shape[1])), np.zeros(0), False
    kept = list(tightest.values())
    matrix = np.array([row for row, _ in kept])
    rhs = np.array([value for _, value in kept])

    protected = _sign_rows(matrix, rhs)
    if nonnegative:
        keep = _drop_dominated(matrix, rhs, protected)
        matrix, rhs, protected = matrix[keep], rhs[keep], protected[keep]
    if len(rhs) > REDUNDANCY_LP_ROWS:
        keep = _drop_implied(matrix, rhs, protected)
        matrix, rhs = matrix[keep], rhs[keep]
    return matrix, rhs, False


def _sign_rows(matrix, rhs):
    """Rows -x <= 0 on a single variable."""
    nonzero = np.abs(matrix) > TOL
    return (nonzero.sum(axis=1) == 1) & np.all(matrix <= TOL, axis=1) & (np.abs(rhs) <= TOL)


def _drop_dominated(matrix, rhs, protected):
    keep = np.ones(len(rhs), dtype=bool)
    for i in np.flatnonzero(~protected):
        if np.all(matrix[i] <= TOL) and rhs[i] >= -TOL:
            keep[i] = False
            continue
        covers = keep & np.all(matrix >= matrix[i] - TOL, axis=1) & (rhs <= rhs[i] + TOL)
        covers[i] = False
        if np.any(covers):
            keep[i] = False
    return keep


def _drop_implied(matrix, rhs, protected):
    """Remove rows whose maximum over the remaining rows already meets their bound."""
    keep = np.ones(len(rhs), dtype=bool)
    free = [(None, None)] * matrix.shape[1]
    for i in np.flatnonzero(~protected):
        keep[i] = False
        result = linprog(
            -matrix[i], A_ub=np.vstack([matrix[keep], matrix[i]]), b_ub=np.append(rhs[keep], rhs[i] + 1.0),
            bounds=free, method='highs')
        if result.status != 0 or -result.fun > rhs[i] + TOL:
            keep[i] = True
    logger.debug(f'LP pruning kept {int(keep.sum())} of {len(keep)} rows')
    return keep


def _next_variable(matrix, variables, pending):
    """The pending variable with the fewest positive x negative row pairs."""
    def pairs(name):
        c = matrix[:, variables.index(name)]
        return int(np.sum(c > TOL)) * int(np.sum(c < -TOL))
    return min(pending, key=pairs)


def fm_eliminate(system, names, nonnegative=False):
    """
    Project ``system`` onto the variables not in ``names`` by Fourier-Motzkin elimination.

    Variables go in order of fewest generated rows. Pass ``nonnegative=True`` only
    when the system bounds every variable below by zero.
    """
    variables = list(system.variables)
    matrix, rhs = system.matrix.copy(), system.rhs.copy()
    pending = list(names)
    while pending:
        name = _next_variable(matrix, variables, pending)
        pending.remove(name)
        col = variables.index(name)
        c = matrix[:, col]
        pos, neg = c > TOL, c < -TOL
        zero = ~(pos | neg)

        upper = matrix[pos] / c[pos, None]
        upper_rhs = rhs[pos] / c[pos]
        lower = matrix[neg] / -c[neg, None]
        lower_rhs = rhs[neg] / -c[neg]
        combined = (upper[:, None, :] + lower[None, :, :]).reshape(-1, len(variables))
        combined_rhs = (upper_rhs[:, None] + lower_rhs[None, :]).reshape(-1)

        matrix = np.delete(np.vstack([matrix[zero], combined]), col, axis=1)
        rhs = np.concatenate([rhs[zero], combined_rhs])
        variables.pop(col)
        matrix, rhs, infeasible = _prune(matrix, rhs, nonnegative)
        logger.debug(f'FM eliminated {name}: {int(pos.sum())}x{int(neg.sum())} pairs, {len(rhs)} rows left')
        if infeasible:
            logger.info(f'FM projection is empty after eliminating {name}')
            remaining = tuple(v for v in variables if v not in names)
            return LinearInequalitySystem(remaining, np.zeros((1, len(remaining))), rhs)
    return LinearInequalitySystem(tuple(variables), matrix, rhs)


def _row_maximum(region, row):
    """max row . R over a bounded subset region, by linear programming."""
    A, b = region.halfspaces()
    result = linprog(-np.asarray(row), A_ub=A, b_ub=b, bounds=[(0, None)] * 3, method='highs')
    if result.status != 0:
        raise FourierMotzkinError(f'LP check failed: {result.message}')
    return -result.fun


def to_subset_region(system, receiver_of):
    """
    Read a projected system over (R1, R2, R3) back as subset bounds.

    Rows with 0/1 coefficients become bounds; rows that only restate R >= 0 are
    dropped; any other row has to be implied by the subset bounds.
    """
    bounds, deferred = {}, []
    for coefficients, bound in zip(system.matrix, system.rhs):
        if np.all(coefficients <= TOL):
            if bound < -TOL:
                raise FourierMotzkinError('Projected system excludes the origin')
            continue
        if np.all(np.isclose(coefficients, 0.0, atol=TOL) | np.isclose(coefficients, 1.0, atol=TOL)):
            members = frozenset(receiver_of[v] for v, c in zip(system.variables, coefficients) if c > 0.5)
            bounds[members] = min(max(bound, 0.0), bounds.get(members, np.inf))
        else:
            deferred.append((coefficients, bound))

    region = SubsetBoundRegion(bounds)
    for coefficients, bound in deferred:
        row = np.zeros(3)
        for v, c in zip(system.variables, coefficients):
            row[receiver_of[v] - 1] = c
        if _row_maximum(region, row) > bound + 1e-7:
            raise FourierMotzkinError(f'Projected row {row} <= {bound} is not of subset-sum form')
        logger.debug(f'Dropped implied non-subset row {row} <= {bound}')
    return region


@dataclass(frozen=True)
class Polytope3:
    vertices: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def tight_rows(self, vertex, tol=TOL):
        return np.flatnonzero(np.abs(self.A @ vertex - self.b) <= tol)


def _as_halfspaces(region):
    if isinstance(region, SubsetBoundRegion):
        if not region.is_bounded():
            raise UnboundedRegionError('Every receiver needs a finite bound to enumerate vertices')
        return region.halfspaces()
    A, b = region
    return np.asarray(A, dtype=float), np.asarray(b, dtype=float)


def _nonsingular_triples(A):
    triples, inverses = [], []
    for idx in combinations(range(len(A)), 3):
        M = A[list(idx)]
        if abs(np.linalg.det(M)) > SINGULAR_TOL:
            triples.append(idx)
            inverses.append(np.linalg.inv(M))
    return np.array(triples, dtype=int).reshape(-1, 3), np.array(inverses).reshape(-1, 3, 3)


def vertices(region):
    """All vertices from triples of tight constraints, feasibility-filtered and deduplicated."""
    A, b = _as_halfspaces(region)
    triples, inverses = _nonsingular_triples(A)
    found = []
    for idx, inverse in zip(triples, inverses):
        point = inverse @ b[idx]
        if np.all(A @ point <= b + TOL) and not any(np.allclose(point, v, atol=TOL) for v in found):
            found.append(point)
    points = np.array(found).reshape(-1, 3)
    points[np.abs(points) < TOL] = 0.0
    return Polytope3(points, A, b)


def support(region, mu):
    """max mu . R with its maximizer; ties go to the lexicographically largest vertex."""
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < 0):
        raise ValueError('Weights must be nonnegative')
    polytope = region if isinstance(region, Polytope3) else vertices(region)
    values = polytope.vertices @ mu
    best = values.max()
    ties = [tuple(v) for v, value in zip(polytope.vertices, values) if value >= best - TOL]
    return float(best), np.array(max(ties))


def contains(region, r, tol=TOL):
    r = np.asarray(r, dtype=float)
    if np.any(r < -tol):
        return False
    return all(sum(r[k - 1] for k in V) <= b + tol for V, b in region.finite_bounds().items())


def hull_support(points, mu):
    """Support of the convex hull of ``points`` (the maximum over the points themselves)."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if not len(points):
        raise ValueError('hull_support needs at least one point')
    return float(np.max(points @ np.asarray(mu, dtype=float)))


def batch_support(subsets, table, mu):
    """
    Support values of many regions sharing the same subsets.

    ``table[k, s]`` is the bound of ``subsets[k]`` in region ``s`` (inf for no
    constraint). Returns one support value per column.
    """
    mu = np.asarray(mu, dtype=float)
    table = np.asarray(table, dtype=float)
    A = np.array([indicator(V) for V in subsets] + [-indicator({k}) for k in RECEIVERS])
    B = np.vstack([table, np.zeros((3, table.shape[1]))])
    triples, inverses = _nonsingular_triples(A)
    out = np.full(table.shape[1], -np.inf)
    for start in range(0, table.shape[1], VERTEX_CHUNK):
        block = B[:, start:start + VERTEX_CHUNK]
        rhs = block[triples]                              # (T, 3, S)
        with np.errstate(invalid='ignore'):
            points = np.einsum('tij,tjs->tis', inverses, rhs)
            slack = np.einsum('mi,tis->tms', A, points) - block[None, :, :]
        feasible = np.all(np.isfinite(points), axis=1) & np.all(slack <= TOL, axis=1)
        values = np.where(feasible, np.einsum('i,tis->ts', mu, np.nan_to_num(points)), -np.inf)
        out[start:start + VERTEX_CHUNK] = values.max(axis=0)
    return out

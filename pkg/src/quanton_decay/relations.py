"""Classification of triples of no-decay hyperplane normals.

Given normals ``eta, eta', eta''`` with offsets ``tau, tau', tau''``, a joint
translation by ``a`` shifts the offsets by ``(eta.a, eta'.a, eta''.a)`` and
only multiplies a mixed projector matrix element by a phase. Offset
combinations ``c . tau`` that are blind to every such shift are exactly the
linear relations ``c0 eta + c1 eta' + c2 eta'' = 0``, and only those can carry
dependence beyond a phase. Translations orthogonal to all three normals leave
the offsets alone and force ``(p - p').a = 0`` for a non-zero element.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidEta
from .minkowski import (
    DEFAULT_RANK_TOL,
    REST,
    FourVector,
    UnitTimelike,
    Velocity3,
    eta_from_velocity,
    lorentz_inner,
    orthogonal_spacelike_family,
    svd_rank,
)

CASE1 = "Case1"
CASE2 = "Case2"
CASE3 = "Case3"

BOTH_ZERO = "BothZero"
EQUAL_NONZERO = "EqualNonzero"
COLLINEAR_UNEQUAL = "CollinearUnequal"
NON_COLLINEAR = "NonCollinear"

TRIVIAL_MEANING = "at most a phase factor"

_CASE_BY_RANK = {3: CASE1, 2: CASE2, 1: CASE3}


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    rank: int
    relations: tuple[tuple[float, float, float], ...]
    orthogonal_family: tuple[tuple[float, float, float, float], ...]
    support_condition: str
    nontrivial_combinations: tuple[tuple[float, float, float], ...]
    trivial_combinations: tuple[tuple[float, float, float], ...]
    two_equal: bool
    near_degenerate: bool
    singular_values: tuple[float, ...]

    @property
    def orthogonal_family_dim(self) -> int:
        return len(self.orthogonal_family)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["orthogonal_family_dim"] = self.orthogonal_family_dim
        out["trivial_meaning"] = TRIVIAL_MEANING
        return out


@dataclass(frozen=True)
class VelocityPairVerdict:
    category: str
    time_dependent: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _rref_rows(basis: np.ndarray, tol: float) -> np.ndarray:
    """Reduced row echelon form, so a relation space has one canonical basis."""
    m = basis.astype(float).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[pivot, c]) <= tol:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        m[r] /= m[r, c]
        for k in range(rows):
            if k != r:
                m[k] -= m[k, c] * m[r]
        r += 1
    return m[:r]


def _canonical(vec: np.ndarray) -> tuple[float, ...]:
    vec = vec / np.linalg.norm(vec)
    nz = np.nonzero(np.abs(vec) > 1e-12)[0]
    if nz.size and vec[nz[0]] < 0:
        vec = -vec
    vec = np.where(np.abs(vec) > 1e-15, vec, 0.0)
    return tuple(float(v) for v in vec)


def _as_eta(e) -> UnitTimelike:
    if isinstance(e, UnitTimelike):
        return e
    try:
        return UnitTimelike(FourVector.from_array(e) if not isinstance(e, FourVector) else e)
    except (ValueError, TypeError) as exc:
        raise InvalidEta(str(exc)) from exc


def classify_triple(eta, eta_p, eta_pp, tol: float = DEFAULT_RANK_TOL) -> CaseReport:
    """Sort three hyperplane normals into Case 1, 2 or 3 and report the consequences.

    Case 1 (rank 3): no relation, every offset enters only through phases.
    Case 2 (rank 2): one relation, its offset combination is the single
    channel for non-trivial dependence. Case 3 (rank 1): all normals equal,
    ``p = p'`` is required and offset differences are unconstrained.
    """
    etas = [_as_eta(e) for e in (eta, eta_p, eta_pp)]
    rows = np.array([e.as_array() for e in etas])
    rank, sv, u, _ = svd_rank(rows, tol)
    if rank not in _CASE_BY_RANK:
        raise InvalidEta(f"unexpected rank {rank} for three time-like vectors")
    case = _CASE_BY_RANK[rank]

    rel_basis = u[:, rank:].T  # left null space: c with c @ rows = 0
    relations = tuple(_canonical(r) for r in _rref_rows(rel_basis, 1e-12)) if rel_basis.size else ()
    trivial_basis = u[:, :rank].T  # image of a -> (eta.a, eta'.a, eta''.a)
    trivial = tuple(_canonical(r) for r in _rref_rows(trivial_basis, 1e-12))

    _, family = orthogonal_spacelike_family(etas, tol)
    family_t = tuple(tuple(float(c) for c in b.as_array()) for b in family)

    if case == CASE3:
        support = "p - p' = 0 (full equality)"
    else:
        support = (f"(p - p').a = 0 for all a in the {len(family)}-dimensional "
                   "orthogonal family")

    ratios = sv / sv[0]
    near = bool(np.any((ratios > tol / 10.0) & (ratios < tol * 10.0)))

    two_equal = False
    if case == CASE2:
        scale = max(e.t for e in etas)
        for i in range(3):
            for j in range(i + 1, 3):
                diff = np.max(np.abs(rows[i] - rows[j]))
                two_equal |= bool(diff < 10.0 * tol * scale)

    return CaseReport(
        case_id=case,
        rank=rank,
        relations=relations,
        orthogonal_family=family_t,
        support_condition=support,
        nontrivial_combinations=relations,
        trivial_combinations=trivial,
        two_equal=two_equal,
        near_degenerate=near,
        singular_values=tuple(float(x) for x in sv),
    )


def classify_velocity_pair(u: Velocity3, u_p: Velocity3,
                           tol: float = DEFAULT_RANK_TOL) -> VelocityPairVerdict:
    """Time dependence of ``<u'| Pi(t) |u>`` on instantaneous hyperplanes."""
    if not isinstance(u, Velocity3):
        u = Velocity3.from_array(u)
    if not isinstance(u_p, Velocity3):
        u_p = Velocity3.from_array(u_p)
    a, b = u.as_array(), u_p.as_array()
    zero_a, zero_b = u.speed < tol, u_p.speed < tol
    if zero_a and zero_b:
        category = BOTH_ZERO
    elif np.linalg.norm(a - b) < tol:
        category = EQUAL_NONZERO
    elif np.linalg.norm(np.cross(a, b)) < tol * (1.0 + u.speed * u_p.speed):
        category = COLLINEAR_UNEQUAL
    else:
        category = NON_COLLINEAR
    return VelocityPairVerdict(category, category in (BOTH_ZERO, COLLINEAR_UNEQUAL))


def verdict_from_triple(report: CaseReport, tol: float = 1e-9) -> bool:
    """True when a non-trivial combination involves the third offset (``tau''``)."""
    return any(abs(c[2]) > tol for c in report.nontrivial_combinations)


def velocity_pair_triple(u: Velocity3, u_p: Velocity3,
                         tol: float = DEFAULT_RANK_TOL) -> CaseReport:
    """Triple of the two velocity-eigenstate normals and the instantaneous normal."""
    return classify_triple(eta_from_velocity(u), eta_from_velocity(u_p), REST, tol)


def support_condition_check(report: CaseReport, p, p_p, tol: float = 1e-9) -> bool:
    """Whether the momenta ``p, p'`` allow a non-zero matrix element."""
    diff = _vec(p) - _vec(p_p)
    if report.case_id == CASE3:
        return bool(np.all(np.abs(diff) <= tol))
    return all(abs(lorentz_inner(b, diff)) <= tol for b in report.orthogonal_family)


def _vec(p) -> np.ndarray:
    if isinstance(p, FourVector):
        return p.as_array()
    return np.asarray(p, dtype=float)


def format_record(record: dict) -> str:
    """``key: value`` lines with fixed float formatting."""
    lines = []
    for key, value in record.items():
        lines.append(f"{key}: {_format_value(value)}")
    return "\n".join(lines) + "\n"


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def json_record(record: dict) -> str:
    return json.dumps(record, sort_keys=False, separators=(",", ":")) + "\n"

"""Dense-operator spectral analysis of the walk and the search-framework check.

The walk operator is real orthogonal, so its spectrum splits into a +1 class,
a -1 class, and complex-conjugate rotation pairs e^{+-i theta}.  Everything
here works from the real Schur form: the orthogonal Schur basis gives real
orthonormal bases for every class, which makes good-state expansion
coefficients plain projections and keeps degenerate rotation angles
well-defined (individual eigenvectors are not unique under degeneracy,
subspace projections are).

Grid sides are capped at GRID_CAP; beyond that the dense eigensolve stops
being desk-scale and the simulation module is the right tool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import GridGeometry, Oracle, WalkConfig, coin_vector, shift_permutation
from .errors import DivergentSum, GridTooLarge, NotOrthogonal, NotReflection

GRID_CAP = 16
CLASSIFY_TOL = 1e-9
THETA_GROUP_TOL = 1e-9
PROJECTOR_TOL = 1e-8

# a rotation angle this close to zero carrying real weight makes the
# 1/(1 - cos theta) sums blow up
_THETA_FLOOR = 1e-6
_WEIGHT_FLOOR = 1e-8


def _check_cap(geometry: GridGeometry) -> None:
    if geometry.side > GRID_CAP:
        raise GridTooLarge(
            f"grid side {geometry.side} exceeds the dense-operator cap {GRID_CAP}"
        )


def build_walk_matrix(config: WalkConfig) -> np.ndarray:
    """Explicit 5N x 5N matrix of the oracle-free step: coin then shift."""
    _check_cap(config.geometry)
    dim = config.geometry.state_size
    coin = coin_vector(config.loop_weight)
    coin_block = 2.0 * np.outer(coin, coin) - np.eye(5)
    big_coin = np.kron(np.eye(config.geometry.n_vertices), coin_block)
    perm = shift_permutation(config.geometry)
    shift = np.zeros((dim, dim))
    shift[np.arange(dim), perm] = 1.0
    return shift @ big_coin


def build_oracle_factor(config: WalkConfig) -> np.ndarray:
    """The query operator alone: sign flip at the marked vertex (Grover),
    reflection about the marked coin state (SKW), or identity."""
    _check_cap(config.geometry)
    dim = config.geometry.state_size
    factor = np.eye(dim)
    start = 5 * config.marked
    if config.oracle is Oracle.GROVER:
        idx = np.arange(start, start + 5)
        factor[idx, idx] = -1.0
    elif config.oracle is Oracle.SKW:
        good = np.zeros(dim)
        good[start : start + 5] = coin_vector(config.loop_weight)
        factor -= 2.0 * np.outer(good, good)
    return factor


def build_step_matrix(config: WalkConfig) -> np.ndarray:
    """Full search step as a matrix: walk matrix times oracle factor."""
    return build_walk_matrix(config) @ build_oracle_factor(config)


@dataclass
class RotationClass:
    """One angle theta in (0, pi) with all its conjugate eigenvector pairs.

    ``basis`` is a real orthonormal basis of the 2m-dimensional invariant
    subspace; ``vectors_plus`` holds m orthonormal complex eigenvectors for
    e^{+i theta} (their conjugates are the e^{-i theta} partners).
    """

    theta: float
    basis: np.ndarray
    vectors_plus: np.ndarray

    @property
    def pair_count(self) -> int:
        return self.vectors_plus.shape[1]


@dataclass
class EigenClass:
    """Spectrum of a real orthogonal operator, split into +1/-1/rotations."""

    plus_one: np.ndarray  # real orthonormal basis of the +1 eigenspace
    minus_one: np.ndarray  # real orthonormal basis of the -1 eigenspace
    rotations: list[RotationClass]
    tol: float

    @property
    def plus_multiplicity(self) -> int:
        return self.plus_one.shape[1]

    @property
    def minus_multiplicity(self) -> int:
        return self.minus_one.shape[1]

    @property
    def dimension_accounted(self) -> int:
        rotated = sum(2 * rc.pair_count for rc in self.rotations)
        return self.plus_multiplicity + self.minus_multiplicity + rotated


def orthogonality_defect(op: np.ndarray) -> float:
    """max |op^T op - I|."""
    dim = op.shape[0]
    return float(np.max(np.abs(op.T @ op - np.eye(dim))))


def eigendecompose(op: np.ndarray, tol: float = CLASSIFY_TOL) -> EigenClass:
    """Classify the spectrum of a real orthogonal matrix via real Schur form.

    Eigenvalues within ``tol`` of +-1 land in the corresponding class; the
    rest form conjugate rotation pairs, grouped by angle within
    THETA_GROUP_TOL so degenerate angles share one subspace.
    """
    op = np.asarray(op, dtype=np.float64)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    defect = orthogonality_defect(op)
    if defect > tol:
        raise NotOrthogonal(f"matrix deviates from orthogonality by {defect:.3e} (tol {tol:.1e})")

    schur_t, schur_z = scipy.linalg.schur(op, output="real")
    dim = op.shape[0]
    plus_cols: list[int] = []
    minus_cols: list[int] = []
    raw_rotations: list[tuple[float, np.ndarray, np.ndarray]] = []

    i = 0
    while i < dim:
        two_by_two = i + 1 < dim and schur_t[i + 1, i] != 0.0
        if two_by_two:
            block = schur_t[i : i + 2, i : i + 2]
            lams, vecs = np.linalg.eig(block)
            pick = int(np.argmax(lams.imag))
            lam = lams[pick]
            if lam.imag <= 0.0:
                # standardized real Schur 2x2 blocks always carry a complex
                # pair; treat a real pair defensively as two 1x1 blocks
                for j in (i, i + 1):
                    _classify_real(schur_t[j, j], j, plus_cols, minus_cols, tol)
            elif abs(lam - 1.0) <= tol:
                plus_cols.extend((i, i + 1))
            elif abs(lam + 1.0) <= tol:
                minus_cols.extend((i, i + 1))
            else:
                theta = float(np.angle(lam))
                pair_basis = schur_z[:, i : i + 2]
                vec_plus = pair_basis @ vecs[:, pick]
                raw_rotations.append((theta, pair_basis, vec_plus))
            i += 2
        else:
            _classify_real(schur_t[i, i], i, plus_cols, minus_cols, tol)
            i += 1

    rotations = _group_rotations(raw_rotations)
    return EigenClass(
        plus_one=schur_z[:, plus_cols],
        minus_one=schur_z[:, minus_cols],
        rotations=rotations,
        tol=tol,
    )


def _classify_real(lam: float, col: int, plus_cols: list, minus_cols: list, tol: float) -> None:
    if abs(lam - 1.0) <= tol:
        plus_cols.append(col)
    elif abs(lam + 1.0) <= tol:
        minus_cols.append(col)
    else:
        raise NotOrthogonal(f"real eigenvalue {lam!r} is not within {tol:.1e} of +-1")


def _group_rotations(raw: list[tuple[float, np.ndarray, np.ndarray]]) -> list[RotationClass]:
    if not raw:
        return []
    raw.sort(key=lambda item: item[0])
    groups: list[RotationClass] = []
    bucket = [raw[0]]
    for item in raw[1:]:
        if item[0] - bucket[-1][0] <= THETA_GROUP_TOL:
            bucket.append(item)
        else:
            groups.append(_finish_group(bucket))
            bucket = [item]
    groups.append(_finish_group(bucket))
    return groups


def _finish_group(bucket: list[tuple[float, np.ndarray, np.ndarray]]) -> RotationClass:
    theta = float(np.mean([item[0] for item in bucket]))
    basis = np.hstack([item[1] for item in bucket])
    vectors_plus = np.column_stack([item[2] for item in bucket])
    return RotationClass(theta=theta, basis=basis, vectors_plus=vectors_plus)


def reconstruct(eig: EigenClass) -> np.ndarray:
    """Rebuild the operator from its classified spectrum (for verification)."""
    dim = eig.plus_one.shape[0]
    out = eig.plus_one @ eig.plus_one.T - eig.minus_one @ eig.minus_one.T
    for rc in eig.rotations:
        plus_proj = rc.vectors_plus @ rc.vectors_plus.conj().T
        out = out + 2.0 * np.real(np.exp(1j * rc.theta) * plus_proj)
    return out


@dataclass
class GoodStateExpansion:
    """Projection weights of a good state on the +1 / -1 / rotation classes.

    ``a0`` is the norm of the projection onto the full +1 eigenspace (equal
    to the plain overlap when that space is one-dimensional); each ``a_j``
    entry satisfies 2 a_j^2 = squared projection norm onto its rotation
    subspace, one entry per angle group in the source EigenClass.
    """

    a0: float
    a_k: np.ndarray
    a_j: np.ndarray

    def completeness(self) -> float:
        """a0^2 + sum a_k^2 + 2 sum a_j^2; equals 1 for a unit-norm state."""
        return float(self.a0**2 + np.sum(self.a_k**2) + 2.0 * np.sum(self.a_j**2))


def expand_good_state(eig: EigenClass, psi_good: np.ndarray) -> GoodStateExpansion:
    """Expand a real unit vector in the classified eigenbasis."""
    psi = np.asarray(psi_good)
    if np.iscomplexobj(psi):
        if np.max(np.abs(psi.imag)) > 1e-12:
            raise ValueError("good state must be a real vector")
        psi = psi.real
    psi = np.ascontiguousarray(psi, dtype=np.float64).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"good state must have unit norm, got {norm!r}")

    a0 = float(np.linalg.norm(eig.plus_one.T @ psi))
    a_k = np.abs(eig.minus_one.T @ psi)
    a_j = np.array(
        [np.linalg.norm(rc.basis.T @ psi) / math.sqrt(2.0) for rc in eig.rotations]
    )
    return GoodStateExpansion(a0=a0, a_k=a_k, a_j=a_j)


def compute_alpha(expansion: GoodStateExpansion, eig: EigenClass) -> float:
    """Point estimate a0 / sqrt(sum_j a_j^2/(1-cos theta_j) + sum_k a_k^2 / 4).

    The asymptotic envelope's unknown constant is taken as 1.
    """
    thetas = np.array([rc.theta for rc in eig.rotations])
    a_j = expansion.a_j
    if len(thetas) != len(a_j):
        raise ValueError("expansion does not match the eigenclass rotation count")
    for theta, weight in zip(thetas, a_j):
        if theta < _THETA_FLOOR and weight > _WEIGHT_FLOOR:
            raise DivergentSum(
                f"rotation angle {theta:.3e} below {_THETA_FLOOR:.0e} carries weight {weight:.3e}"
            )
    rotation_sum = float(np.sum(a_j**2 / (1.0 - np.cos(thetas)))) if len(thetas) else 0.0
    reflection_sum = float(np.sum(expansion.a_k**2))
    denom = rotation_sum + 0.25 * reflection_sum
    if denom <= 0.0:
        raise ValueError("good state has no weight outside the +1 eigenspace")
    return float(expansion.a0 / math.sqrt(denom))


def compute_overlap_estimates(
    expansion: GoodStateExpansion, eig: EigenClass
) -> tuple[float, float]:
    """Point estimates (overlap_start, overlap_good), constants taken as 1.

    overlap_good = min(1 / sqrt(sum_j a_j^2 cot^2(theta_j/4)), 1);
    overlap_start = 1 - (alpha^4/a0^2) sum_j a_j^2/(1-cos theta_j)^2
                      - (alpha^4/a0^2) sum_k a_k^2, clamped to [0, 1].
    """
    thetas = np.array([rc.theta for rc in eig.rotations])
    a_j = expansion.a_j
    a_k = expansion.a_k

    cot_sum = float(np.sum(a_j**2 / np.tan(thetas / 4.0) ** 2)) if len(thetas) else 0.0
    overlap_good = 1.0 if cot_sum == 0.0 else min(1.0 / math.sqrt(cot_sum), 1.0)

    rotation_weight = float(np.sum(a_j**2)) if len(a_j) else 0.0
    reflection_weight = float(np.sum(a_k**2))
    if rotation_weight == 0.0 and reflection_weight == 0.0:
        # the good state sits entirely in the +1 eigenspace
        return 1.0, overlap_good

    alpha = compute_alpha(expansion, eig)
    ratio = (alpha**4 / expansion.a0**2) if expansion.a0 > 0.0 else 0.0
    start_penalty = float(np.sum(a_j**2 / (1.0 - np.cos(thetas)) ** 2)) if len(thetas) else 0.0
    overlap_start = 1.0 - ratio * start_penalty - ratio * reflection_weight
    overlap_start = min(max(overlap_start, 0.0), 1.0)
    return overlap_start, overlap_good


@dataclass
class FrameworkReport:
    """Whether an oracle factor is a rank-1 reflection, plus spectral estimates.

    The alpha/runtime/overlap fields are filled only when the factor fits the
    rank-1 form and a walk operator was supplied to expand against.
    """

    fits: bool
    projector_rank: int
    plus_one_multiplicity: int | None = None
    alpha: float | None = None
    runtime_estimate: float | None = None
    overlap_start: float | None = None
    overlap_good: float | None = None
    good_state: np.ndarray | None = None


def check_framework_fit(
    oracle_factor: np.ndarray,
    walk_op: np.ndarray | None = None,
    tol: float = PROJECTOR_TOL,
) -> FrameworkReport:
    """Test whether an oracle factor has the form I - 2|good><good|.

    (I - factor)/2 must be a projector; its rank decides the verdict (rank 1
    fits, anything else does not).  When it fits and ``walk_op`` is given,
    the recovered good state is expanded in the walk spectrum to produce the
    alpha, runtime, and overlap point estimates.
    """
    factor = np.asarray(oracle_factor, dtype=np.float64)
    if factor.ndim != 2 or factor.shape[0] != factor.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {factor.shape}")
    dim = factor.shape[0]
    projector = 0.5 * (np.eye(dim) - factor)
    defect = float(np.max(np.abs(projector @ projector - projector)))
    if defect > tol:
        raise NotReflection(f"(I - factor)/2 deviates from a projector by {defect:.3e}")

    left, singulars, _ = np.linalg.svd(projector)
    rank = int(np.sum(singulars > tol))
    fits = rank == 1

    good = None
    if fits:
        good = left[:, 0].copy()
        anchor = int(np.argmax(np.abs(good)))
        if good[anchor] < 0.0:
            good = -good

    report = FrameworkReport(fits=fits, projector_rank=rank, good_state=good)
    if walk_op is not None:
        eig = eigendecompose(np.asarray(walk_op, dtype=np.float64))
        report.plus_one_multiplicity = eig.plus_multiplicity
        if fits:
            expansion = expand_good_state(eig, good)
            report.alpha = compute_alpha(expansion, eig)
            report.runtime_estimate = math.pi / (2.0 * report.alpha)
            report.overlap_start, report.overlap_good = compute_overlap_estimates(
                expansion, eig
            )
    return report


def analyze_search(config: WalkConfig) -> FrameworkReport:
    """Full framework check for a configured search: factor + walk spectrum."""
    walk = build_walk_matrix(config)
    factor = build_oracle_factor(config)
    return check_framework_fit(factor, walk)


def format_report(report: FrameworkReport) -> str:
    """key=value lines, one datum per line; unset fields are omitted."""
    lines = [
        f"fits={'true' if report.fits else 'false'}",
        f"projector_rank={report.projector_rank}",
    ]
    if report.plus_one_multiplicity is not None:
        lines.append(f"plus_one_multiplicity={report.plus_one_multiplicity}")
    for key in ("alpha", "runtime_estimate", "overlap_start", "overlap_good"):
        value = getattr(report, key)
        if value is not None:
            lines.append(f"{key}={float(value)!r}")
    return "\n".join(lines) + "\n"


def write_report(report: FrameworkReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_report(report))

"""Forest-sum identities for the twisted Laplacian, each checked two ways.

Every operation here computes one side of an identity by summing over the
forest census and the other side by plain dense linear algebra, and reports
how far apart the two routes land:

* the weighted forest average of the T_bar operators equals the metric
  projection of degree-1 chains onto ker(boundary);
* the unique cycle z with V - Rz a coboundary is that projection applied to
  R^{-1} V, and its coefficients satisfy a per-edge forest-sum formula;
* det(laplacian) equals the total forest weight;
* det of one forest's restricted boundary Gram matrix equals its holonomy
  factor, and in the low-temperature family R_beta = exp(beta * W) the
  chosen forest's restricted Laplacian determinant dominates the full one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundle import DEFAULT_EPS_HOL, Gauge, LineBundle, gauge_transform, h0_trivial
from .chains import (
    ChainVector,
    LinearOperator,
    ResistanceMap,
    boundary_operator,
    determinant,
    edge_basis,
    homology_dims,
    kernel_basis,
    laplacian,
)
from .errors import BasisMismatchError, InvalidWError, NoForestsError
from .forests import ForestRecord, enumerate_forests, tbar_operator
from .graphs import Graph

_TINY = 1e-300


def oracle_projection(g: Graph, L: LineBundle, R: ResistanceMap, tol=None) -> LinearOperator:
    """Metric projection onto ker(boundary), built without any forest data.

    Uses an orthonormal kernel basis K and the Gram matrix of K in the
    resistance-weighted inner product: P = K (K* R K)^{-1} K* R.
    """
    bop = boundary_operator(g, L)
    kers = kernel_basis(bop, tol)
    basis = edge_basis(g)
    m = len(basis)
    if not kers:
        return LinearOperator(np.zeros((m, m), dtype=complex), 1, basis, 1, basis)
    K = np.column_stack([k.coeffs for k in kers])
    r = R.diagonal(basis)
    KR = K.conj().T * r[None, :]
    G = KR @ K
    P = K @ np.linalg.solve(G, KR)
    return LinearOperator(P, 1, basis, 1, basis)


def _forest_sum_operator(g, forests):
    m = len(g.edges)
    acc = np.zeros((m, m), dtype=complex)
    delta = 0.0
    for T in forests:
        acc += T.weight * tbar_operator(g, T.bundle, T).matrix
        delta += T.weight
    return acc, delta


@dataclass(frozen=True)
class ProjectionReport:
    projection: LinearOperator
    oracle: LinearOperator
    delta: float
    forest_count: int
    max_entry_discrepancy: float


def kirchhoff_projection(
    g: Graph,
    L: LineBundle,
    R: ResistanceMap,
    eps_hol: float = DEFAULT_EPS_HOL,
    tol=None,
) -> ProjectionReport:
    """Weighted forest average of T_bar, checked against oracle_projection."""
    forests = enumerate_forests(g, L, R, eps_hol)
    if not forests:
        raise NoForestsError(
            "no forest cleared the holonomy threshold; the forest average is undefined"
        )
    acc, delta = _forest_sum_operator(g, forests)
    basis = edge_basis(g)
    P = LinearOperator(acc / delta, 1, basis, 1, basis)
    oracle = oracle_projection(g, L, R, tol)
    disc = float(np.abs(P.matrix - oracle.matrix).max(initial=0.0))
    return ProjectionReport(P, oracle, delta, len(forests), disc)


@dataclass(frozen=True)
class NetworkSolution:
    """The cycle z with V - Rz orthogonal to every cycle.

    `current` comes from the projection route, `formula_currents` from the
    per-edge forest sum; the two are computed separately and compared.
    """

    voltage: ChainVector
    current: ChainVector
    residual: ChainVector
    formula_currents: np.ndarray
    route_discrepancy: float
    orthogonality_defect: float


def solve_network(
    g: Graph,
    L: LineBundle,
    R: ResistanceMap,
    V: ChainVector,
    eps_hol: float = DEFAULT_EPS_HOL,
    tol=None,
) -> NetworkSolution:
    basis = edge_basis(g)
    if V.degree != 1 or V.basis != basis:
        raise BasisMismatchError("voltage must be a degree-1 chain on the graph's edge basis")
    forests = enumerate_forests(g, L, R, eps_hol)
    if not forests:
        raise NoForestsError("no forest cleared the holonomy threshold")
    acc, delta = _forest_sum_operator(g, forests)
    r = R.diagonal(basis)
    z = (acc / delta) @ (V.coeffs / r)
    # independent route: <z, b> = (1/delta) sum_T (w_T / r_b) <V, T_bar(b)>
    acc2 = np.zeros(len(basis), dtype=complex)
    for T in forests:
        M = tbar_operator(g, T.bundle, T).matrix
        acc2 += T.weight * (M.conj().T @ V.coeffs)
    z2 = acc2 / (delta * r)
    resid = V.coeffs - r * z
    kers = kernel_basis(boundary_operator(g, L), tol)
    orth = 0.0
    for k in kers:
        orth = max(orth, abs(complex(np.vdot(k.coeffs, resid))))
    return NetworkSolution(
        V,
        ChainVector(1, basis, z),
        ChainVector(1, basis, resid),
        z2,
        float(np.abs(z - z2).max(initial=0.0)),
        float(orth),
    )


@dataclass(frozen=True)
class MatrixTreeReport:
    det_laplacian: float
    log_det: float
    sum_weights: float
    relative_error: float | None
    forest_count: int
    weights: tuple[tuple[tuple[str, ...], float], ...]
    degenerate: bool


def matrix_tree_report(
    g: Graph,
    L: LineBundle,
    R: ResistanceMap,
    eps_hol: float = DEFAULT_EPS_HOL,
) -> MatrixTreeReport:
    """det(laplacian) against the forest weight sum.

    Degenerate inputs are reported, not rejected: when the standing
    assumption fails (or every candidate is below the holonomy threshold)
    the census is empty and the determinant is compared against zero.
    """
    rep = h0_trivial(g, L, eps_hol=eps_hol)
    forests = enumerate_forests(g, L, R, eps_hol) if rep.trivial else []
    det = determinant(laplacian(boundary_operator(g, L), R))
    det_val = float(det.value.real)
    total = 0.0
    table = []
    for T in forests:
        total += T.weight
        table.append((T.edges, T.weight))
    rel = abs(det_val - total) / total if total > 0.0 else None
    return MatrixTreeReport(
        det_val,
        det.log_abs,
        total,
        rel,
        len(forests),
        tuple(table),
        not forests,
    )


@dataclass(frozen=True)
class TreeLaplacianCheck:
    det_value: float
    rho_hat: float
    relative_error: float


def tree_laplacian_identity(g: Graph, L: LineBundle, T: ForestRecord) -> TreeLaplacianCheck:
    """det of the forest's unit-resistance restricted Laplacian vs its holonomy factor.

    The restricted boundary is square, so this is |det(restricted boundary)|^2.
    """
    sub = g.spanning_subcomplex(T.edges)
    bop = boundary_operator(g, L, sub)
    det = determinant(laplacian(bop, ResistanceMap.unit(g)))
    v = float(det.value.real)
    rel = abs(v - T.rho_hat) / max(T.rho_hat, _TINY)
    return TreeLaplacianCheck(v, T.rho_hat, rel)


def auto_weight_exponents(g: Graph, T: ForestRecord) -> dict[str, float]:
    """W = 1 on forest edges and |edges| + 2 elsewhere; satisfies the
    dominance inequality with margin."""
    k = len(g.edges)
    return {e.id: (1.0 if e.id in set(T.edges) else k + 2.0) for e in g.edges}


def _check_weight_exponents(g: Graph, T: ForestRecord, W: dict[str, float]) -> None:
    missing = [e.id for e in g.edges if e.id not in W]
    if missing:
        raise InvalidWError(f"missing weight exponents for edges {missing!r}")
    tree = set(T.edges)
    tree_sum = sum(W[b] for b in tree)
    tree_min = min(W[b] for b in tree)
    bound = tree_sum - len(g.edges) * tree_min
    for e in g.edges:
        if e.id in tree:
            continue
        if not W[e.id] > bound:
            raise InvalidWError(
                f"W[{e.id!r}] = {W[e.id]!r} must exceed {bound!r} "
                "(tree total minus edge count times tree minimum)"
            )


@dataclass(frozen=True)
class LowTempReport:
    betas: tuple[float, ...]
    ratios: tuple[float, ...]
    deviations: tuple[float, ...]
    monotone: bool
    weight_exponents: tuple[tuple[str, float], ...]
    tree_log_dets: tuple[float, ...]
    full_log_dets: tuple[float, ...]


def low_temp_demo(
    g: Graph,
    L: LineBundle,
    T: ForestRecord,
    W="auto",
    beta_list=(1.0, 5.0, 10.0, 20.0, 40.0),
) -> LowTempReport:
    """Ratio det(restricted Laplacian) / det(full Laplacian) at R = exp(beta*W).

    Both determinants are evaluated in log space, never multiplied out, so
    large beta stays finite.  With admissible exponents the ratio climbs to 1
    as beta grows; deviations at the 1e-15 level are determinant roundoff,
    which the monotonicity flag tolerates.
    """
    if isinstance(W, str) and W == "auto":
        Wd = auto_weight_exponents(g, T)
    else:
        Wd = {b: float(w) for b, w in dict(W).items()}
    _check_weight_exponents(g, T, Wd)
    D = boundary_operator(g, L).matrix
    w_full = np.asarray([Wd[e.id] for e in g.edges], dtype=float)
    tree_idx = [g.edge_index(b) for b in T.edges]
    A = D[:, tree_idx]
    w_tree = w_full[tree_idx]
    ratios = []
    tree_lds = []
    full_lds = []
    for beta in beta_list:
        beta = float(beta)
        MT = (A * np.exp(-beta * w_tree)[None, :]) @ A.conj().T
        MF = (D * np.exp(-beta * w_full)[None, :]) @ D.conj().T
        _, ld_t = np.linalg.slogdet(MT)
        _, ld_f = np.linalg.slogdet(MF)
        tree_lds.append(float(ld_t))
        full_lds.append(float(ld_f))
        ratios.append(float(np.exp(ld_t - ld_f)))
    devs = [abs(1.0 - r) for r in ratios]
    monotone = all(devs[i + 1] <= devs[i] + 1e-12 for i in range(len(devs) - 1))
    return LowTempReport(
        tuple(float(b) for b in beta_list),
        tuple(ratios),
        tuple(devs),
        monotone,
        tuple((e.id, Wd[e.id]) for e in g.edges),
        tuple(tree_lds),
        tuple(full_lds),
    )


@dataclass(frozen=True)
class GaugeCheckReport:
    det_relative_error: float
    census_equal: bool
    holonomy_defect: float
    dims_equal: bool
    forest_count: int


def gauge_invariance_check(
    g: Graph,
    L: LineBundle,
    R: ResistanceMap,
    gauge: Gauge,
    eps_hol: float = DEFAULT_EPS_HOL,
) -> GaugeCheckReport:
    """Everything observable must survive a gauge change: det(laplacian),
    the forest census with weights, and the homology dimensions."""
    L2 = gauge_transform(L, gauge)
    d1 = determinant(laplacian(boundary_operator(g, L), R)).value.real
    d2 = determinant(laplacian(boundary_operator(g, L2), R)).value.real
    rel = abs(d1 - d2) / max(abs(d1), abs(d2), _TINY)
    f1 = enumerate_forests(g, L, R, eps_hol)
    f2 = enumerate_forests(g, L2, R, eps_hol)
    census_equal = [T.edges for T in f1] == [T.edges for T in f2]
    defect = float("inf")
    if census_equal:
        defect = 0.0
        for T1, T2 in zip(f1, f2):
            for c1, c2 in zip(T1.components, T2.components):
                defect = max(defect, abs(c1.holonomy - c2.holonomy))
            defect = max(defect, abs(T1.weight - T2.weight) / max(T1.weight, _TINY))
    dims_equal = homology_dims(g, L) == homology_dims(g, L2)
    return GaugeCheckReport(float(rel), census_equal, defect, dims_equal, len(f1))

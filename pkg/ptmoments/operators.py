#
#  ptmoments/operators.py
#  PartialTransposeMoments
#
#  Dense operators on C^{d_A} ⊗ C^{d_B}: Haar sampling, projectors, the
#  partial transpose, norms and product-state optimization.
#
import logging
log = logging.getLogger(__name__)

import numpy as np
from dataclasses import dataclass
from scipy.linalg import qr, eigh
from scipy.sparse.linalg import eigsh, ArpackNoConvergence

from .utils import PtmUsageError, check_positive

HERMITIAN_TOL = 1e-12
EFFECT_TOL = 1e-9
RESIDUAL_TOL = 1e-9
DENSE_EIGEN_SIDE = 1024
SEESAW_RESTARTS = 16
SEESAW_TOL = 1e-10
SEESAW_MAX_ITER = 500
PPT_MAX_ATTEMPTS = 10 ** 4
RELAXATION_TOL = 1e-8
MULTIPLICATIVITY_TOL = 1e-8

class ConvergenceError(Exception):
    pass

@dataclass(frozen = True)
class RngStream:
    """ A reproducible random stream: (seed, stream_index) fixes every draw.

    Each stream owns the numpy SeedSequence spawned at position
    `stream_index` below `seed`.
    """
    seed: int = 0
    stream_index: int = 0

    def __post_init__(self):
        for name in ('seed', 'stream_index'):
            val = getattr(self, name)
            if not isinstance(val, (int, np.integer)) or not 0 <= val < 2 ** 64:
                raise PtmUsageError(f'{name} must be a 64-bit unsigned integer, got {val!r}.')

    def generator(self):
        seq = np.random.SeedSequence(self.seed, spawn_key = (self.stream_index,))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, index):
        """ The stream of sample `index` below this stream's seed. """
        return RngStream(self.seed, index)

def _generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None or isinstance(rng, (int, np.integer)):
        return RngStream(rng or 0).generator()
    raise PtmUsageError(f'Not a random stream: {rng!r}.')

class HermitianOperator:
    """ A dense Hermitian matrix over the product basis of C^{d_A} ⊗ C^{d_B}.

    The input is checked against HERMITIAN_TOL (relative Frobenius) and then
    stored exactly Hermitian.
    """
    def __init__(self, matrix, dims = None):
        x = np.asarray(matrix, dtype = complex)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise PtmUsageError(f'Expected a square matrix, got shape {x.shape}.')
        side = x.shape[0]
        dims = (side, 1) if dims is None else tuple(int(d) for d in dims)
        if len(dims) != 2 or dims[0] * dims[1] != side:
            raise PtmUsageError(f'Dimensions {dims} do not match side {side}.')
        norm = np.linalg.norm(x)
        if norm > 0 and np.linalg.norm(x - x.conj().T) > HERMITIAN_TOL * norm:
            raise PtmUsageError('Operator is not Hermitian within tolerance.')
        self.matrix = (x + x.conj().T) / 2
        self.dims = dims

    @property
    def d_A(self):
        return self.dims[0]

    @property
    def d_B(self):
        return self.dims[1]

    @property
    def side(self):
        return self.matrix.shape[0]

    def eigenvalues(self):
        return eigh(self.matrix, eigvals_only = True)

    def trace(self):
        return float(np.trace(self.matrix).real)

    def __repr__(self):
        return f'HermitianOperator(dims={self.dims})'

@dataclass
class ProjectorSample:
    operator: HermitianOperator
    spec: object
    rng: object

def haar_unitary(d, rng):
    """ A Haar-random d×d unitary.

    QR-decomposes a complex Ginibre matrix and multiplies each column of Q by
    the phase of the matching diagonal entry of R.
    """
    check_positive('d', d)
    g = _generator(rng)
    z = (g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))) / np.sqrt(2)
    q, r = qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))

def haar_state(D, rng):
    """ A Haar-random unit vector in C^D (normalized complex Gaussian). """
    check_positive('D', D)
    g = _generator(rng)
    v = g.standard_normal(D) + 1j * g.standard_normal(D)
    return v / np.linalg.norm(v)

def random_projector(spec, rng):
    """ The projector onto the span of the first r columns of a Haar unitary. """
    if not 1 <= spec.r <= spec.d:
        raise PtmUsageError(f'r = {spec.r} out of range for d = {spec.d}.')
    v = haar_unitary(spec.d, rng)[:, :spec.r]
    op = HermitianOperator(v @ v.conj().T, (spec.d_A, spec.d_B))
    return ProjectorSample(op, spec, rng)

def _as_operator(x, dims = None):
    if isinstance(x, HermitianOperator):
        return x
    return HermitianOperator(x, dims)

def partial_transpose(x, dims = None):
    """ Transpose the second tensor factor:
    (X^Γ)_{(i,j),(k,l)} = X_{(i,l),(k,j)}. """
    x = _as_operator(x, dims)
    dA, dB = x.dims
    t = x.matrix.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1).reshape(x.side, x.side)
    return HermitianOperator(t, x.dims)

def operator_norm(x):
    """ max |λ| of a Hermitian operator.

    Dense eigensolve up to side 1024; above that, Lanczos on the largest
    magnitude eigenvalue, accepted only if ‖Xv - λv‖ <= 1e-9 ‖X‖_F.
    """
    x = _as_operator(x)
    if x.side <= DENSE_EIGEN_SIDE:
        return float(np.max(np.abs(x.eigenvalues())))
    try:
        vals, vecs = eigsh(x.matrix, k = 1, which = 'LM', tol = 1e-12)
    except ArpackNoConvergence as err:
        raise ConvergenceError(f'Lanczos did not converge: {err}')
    lam, v = vals[0], vecs[:, 0]
    residual = np.linalg.norm(x.matrix @ v - lam * v)
    if residual > RESIDUAL_TOL * np.linalg.norm(x.matrix):
        raise ConvergenceError(f'Eigen-residual {residual:.3g} exceeds the certificate.')
    return float(abs(lam))

def swap_operator(d):
    """ F|ij> = |ji> on C^d ⊗ C^d. """
    f = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1
    return f

def antisym_projector(d):
    """ (I - F)/2, the projector onto the antisymmetric subspace of C^d ⊗ C^d. """
    if d < 2:
        raise PtmUsageError(f'The antisymmetric subspace needs d >= 2, got {d}.')
    return HermitianOperator((np.eye(d * d) - swap_operator(d)) / 2, (d, d))

def antisym_square_witness(d):
    """ <Φ_{A1A2} ⊗ Φ_{B1B2}| P ⊗ P |Φ_{A1A2} ⊗ Φ_{B1B2}> for P the
    antisymmetric projector on (A1 B1) and on (A2 B2); equals (1 - 1/d)/2.

    The state is a product across the two-copy cut (A1A2 | B1B2), so the
    value lower-bounds the separable optimum of P^{⊗2}.
    """
    p = antisym_projector(d).matrix.real
    phi = np.eye(d).reshape(d * d) / np.sqrt(d)
    # amplitudes indexed [a1, a2, b1, b2], regrouped to [(a1 b1), (a2 b2)]
    psi = np.kron(phi, phi).reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    return float(np.sum(psi * (p @ psi @ p.T)))

def product_state_value(m, psiA, psiB):
    """ <ψ_A ⊗ ψ_B| M |ψ_A ⊗ ψ_B>. """
    m = _as_operator(m)
    psiA, psiB = np.asarray(psiA), np.asarray(psiB)
    if psiA.shape != (m.d_A,) or psiB.shape != (m.d_B,):
        raise PtmUsageError(f'Vector shapes {psiA.shape}, {psiB.shape} do not match dims {m.dims}.')
    v = np.kron(psiA, psiB)
    return float(np.real(v.conj() @ m.matrix @ v))

def _top_eigvec(x):
    n = x.shape[0]
    vals, vecs = eigh(x, subset_by_index = [n - 1, n - 1])
    return vals[0], vecs[:, 0]

def check_effect(m, tol = EFFECT_TOL):
    """ Raise unless 0 <= M <= I within `tol`. """
    vals = _as_operator(m).eigenvalues()
    if vals[0] < -tol or vals[-1] > 1 + tol:
        raise PtmUsageError(f'Operator spectrum [{vals[0]:.3g}, {vals[-1]:.3g}] leaves [0, 1].')

def seesaw_hsep(m, restarts = SEESAW_RESTARTS, tol = SEESAW_TOL, rng = None,
                max_iter = SEESAW_MAX_ITER):
    """ Lower bound on max_{ψ_A, ψ_B} <ψ_A ⊗ ψ_B| M |ψ_A ⊗ ψ_B>.

    Alternates between the top eigenvector of M contracted with ψ_B on the
    second factor and the top eigenvector of M contracted with ψ_A on the
    first, from `restarts` random product starts. Every value returned is
    attained by an explicit product state.

    Args:
        m (HermitianOperator): An operator with 0 <= M <= I.
        restarts (int, optional): Random starts. Defaults to 16.
        tol (float, optional): Stop once an iteration gains less. Defaults to 1e-10.
        rng (RngStream, optional): Source of the starting vectors.
        max_iter (int, optional): Iteration cap per start. Defaults to 500.

    Returns:
        float
    """
    m = _as_operator(m)
    check_effect(m)
    check_positive('restarts', restarts)
    g = _generator(rng)
    dA, dB = m.dims
    m4 = m.matrix.reshape(dA, dB, dA, dB)
    best = -np.inf
    for start in range(restarts):
        psiB = haar_state(dB, g)
        value = -np.inf
        for it in range(max_iter):
            _, psiA = _top_eigvec(np.einsum('ibjc,b,c->ij', m4, psiB.conj(), psiB))
            val, psiB = _top_eigvec(np.einsum('aibj,a,b->ij', m4, psiA.conj(), psiA))
            gain = val - value
            value = val
            if gain < tol:
                break
        else:
            log.warning(f'Seesaw start {start} hit the iteration cap ({max_iter}).')
        best = max(best, product_state_value(m, psiA, psiB))
    return best

def ginibre(D, K, rng):
    """ A D×K matrix of complex Gaussians with E|g|² = 1. """
    g = _generator(rng)
    return (g.standard_normal((D, K)) + 1j * g.standard_normal((D, K))) / np.sqrt(2)

def wishart_sample(D, r, rng, dims = None):
    """ W = G G† / D for a D×r complex Gaussian G (unit total variance). """
    check_positive('D', D)
    check_positive('r', r)
    G = ginibre(D, r, rng)
    return HermitianOperator(G @ G.conj().T / D, dims)

def random_hermitian(D, rng, dims = None):
    G = ginibre(D, D, rng)
    return HermitianOperator((G + G.conj().T) / 2, dims)

def random_density_matrix(D, rng, dims = None, rank = None):
    """ G G† / tr(G G†) with G a D×rank Ginibre matrix (rank defaults to D). """
    G = ginibre(D, rank or D, rng)
    rho = G @ G.conj().T
    return HermitianOperator(rho / np.trace(rho).real, dims)

def ppt_test_state(d_A, d_B, rng, max_attempts = PPT_MAX_ATTEMPTS, rank = None):
    """ A state ρ = σ^Γ with σ a random density matrix, retrying until
    σ^Γ >= 0; both ρ and ρ^Γ = σ are then positive. """
    g = _generator(rng)
    D = d_A * d_B
    rank = rank or D * D
    for attempt in range(max_attempts):
        sigma = random_density_matrix(D, g, (d_A, d_B), rank)
        rho = partial_transpose(sigma)
        if rho.eigenvalues()[0] >= 0:
            log.debug(f'PPT state found after {attempt + 1} attempts.')
            return rho
    raise ConvergenceError(f'No PPT state in {max_attempts} attempts on {d_A}x{d_B}.')

@dataclass
class RelaxationReport:
    value: float
    norm: float
    passed: bool

def relaxation_check(m, rho):
    """ tr[Mρ] <= ‖M^Γ‖∞ for a PPT state ρ. """
    m, rho = _as_operator(m), _as_operator(rho)
    value = float(np.real(np.trace(m.matrix @ rho.matrix)))
    norm = operator_norm(partial_transpose(m))
    return RelaxationReport(value, norm, value <= norm + RELAXATION_TOL)

def tensor_operators(m, n):
    """ M ⊗ N with the factors regrouped as (A1 A2) ⊗ (B1 B2). """
    m, n = _as_operator(m), _as_operator(n)
    a1, b1 = m.dims
    a2, b2 = n.dims
    k = np.kron(m.matrix, n.matrix).reshape(a1, b1, a2, b2, a1, b1, a2, b2)
    side = a1 * b1 * a2 * b2
    k = k.transpose(0, 2, 1, 3, 4, 6, 5, 7).reshape(side, side)
    return HermitianOperator(k, (a1 * a2, b1 * b2))

@dataclass
class MultiplicativityReport:
    joint: float
    product: float
    passed: bool

def multiplicativity_check(m, n):
    """ ‖(M ⊗ N)^Γ‖∞ = ‖M^Γ‖∞ ‖N^Γ‖∞ with Γ on the combined B systems. """
    joint = operator_norm(partial_transpose(tensor_operators(m, n)))
    product = operator_norm(partial_transpose(m)) * operator_norm(partial_transpose(n))
    ok = abs(joint - product) <= MULTIPLICATIVITY_TOL * max(1.0, product)
    return MultiplicativityReport(joint, product, ok)


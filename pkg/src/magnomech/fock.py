"""Truncated multi-mode Fock-space states and two-mode exponential unitaries.

Joint objects carry an explicit tuple of per-mode truncations and use
row-major (C-order) composite indexing: the basis state |n_0, n_1, ...>
sits at flat index n_0 * d_1 * d_2 * ... + n_1 * d_2 * ... + ... .
All state payloads are treated as immutable; every operation returns a
new object.

Beamsplitter and two-mode-squeeze unitaries are generated by exponentiating
the Hermitian pair generators (a^dag b + a b^dag) and (a^dag b^dag + a b).
The eigendecomposition of each generator is cached per (dim, dim, kind),
so sweeps over the angle cost two dense matmuls per value.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITICITY_TOL = 1e-10
KET_NORM_TOL = 1e-12
PSD_TOL = 1e-10
DEFAULT_LEAK_TOL = 1e-8

GENERATOR_KINDS = ("beamsplitter", "two_mode_squeeze")


class TruncationLeakError(RuntimeError):
    """Weight reached the top Fock shell of a squeezed mode.

    The truncated exponential is still exactly unitary, so the failure mode
    of an undersized basis is not trace loss but population piling up at the
    edge of the basis.  ``leak`` is the measured fraction of the trace living
    on the top shell (plus any trace deficit), ``budget`` the allowed bound.
    """

    def __init__(self, leak: float, budget: float, context: str = ""):
        self.leak = float(leak)
        self.budget = float(budget)
        msg = (
            f"truncation leak {self.leak:.3e} exceeds budget "
            f"{self.budget:.3e}; enlarge the per-mode truncation"
        )
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


@dataclass(frozen=True)
class ModeDims:
    """Per-mode truncation sizes of a joint Fock space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("need at least one mode")
        if any(d < 2 for d in dims):
            raise ValueError(f"every mode needs dimension >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n_modes(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    def flat_index(self, occupations: Sequence[int]) -> int:
        """Row-major flat index of |n_0, n_1, ...>."""
        if len(occupations) != self.n_modes:
            raise ValueError("occupation list does not match mode count")
        for n, d in zip(occupations, self.dims):
            if not 0 <= n < d:
                raise ValueError(f"occupation {n} outside [0, {d})")
        return int(np.ravel_multi_index(tuple(occupations), self.dims))

    def occupations(self, flat_index: int) -> tuple[int, ...]:
        return tuple(int(n) for n in np.unravel_index(flat_index, self.dims))

    def drop(self, mode: int) -> "ModeDims":
        if self.n_modes < 2:
            raise ValueError("cannot drop the only mode")
        return ModeDims(self.dims[:mode] + self.dims[mode + 1:])


def _as_dims(dims) -> ModeDims:
    if isinstance(dims, ModeDims):
        return dims
    return ModeDims(tuple(dims))


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class FockKet:
    """Pure state on a truncated multi-mode Fock space."""

    __slots__ = ("dims", "amplitudes")

    def __init__(self, dims, amplitudes, *, normalize: bool = False):
        dims = _as_dims(dims)
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1).copy()
        if amps.size != dims.size:
            raise ValueError(
                f"amplitude vector length {amps.size} does not match "
                f"joint dimension {dims.size}"
            )
        norm = float(np.linalg.norm(amps))
        if normalize:
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            amps /= norm
        elif abs(norm - 1.0) > KET_NORM_TOL:
            raise ValueError(f"ket norm {norm!r} deviates from 1 beyond {KET_NORM_TOL}")
        self.dims = dims
        self.amplitudes = _freeze(amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def density_matrix(self) -> "FockDensityMatrix":
        m = np.outer(self.amplitudes, self.amplitudes.conj())
        return FockDensityMatrix(self.dims, m)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


class FockDensityMatrix:
    """Density matrix on a truncated multi-mode Fock space.

    Construction checks Hermiticity and the trace bound.  Trace may sit
    below 1: conditional (branch) states produced by the transfer pipeline
    are carried subnormalized on purpose.  Positivity is an O(d^3) check,
    so it runs in :meth:`validate` rather than on every construction.
    """

    __slots__ = ("dims", "matrix")

    def __init__(self, dims, matrix):
        dims = _as_dims(dims)
        m = np.asarray(matrix, dtype=complex).copy()
        if m.shape != (dims.size, dims.size):
            raise ValueError(
                f"matrix shape {m.shape} does not match joint dimension {dims.size}"
            )
        herm = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if herm > HERMITICITY_TOL:
            raise ValueError(f"matrix deviates from Hermitian by {herm:.3e}")
        tr = m.trace()
        if abs(tr.imag) > HERMITICITY_TOL:
            raise ValueError(f"trace has imaginary part {tr.imag:.3e}")
        if tr.real <= 0.0 or tr.real > 1.0 + 1e-9:
            raise ValueError(f"trace {tr.real!r} outside (0, 1]")
        self.dims = dims
        self.matrix = _freeze(m)

    def trace(self) -> float:
        return float(self.matrix.trace().real)

    def populations(self) -> np.ndarray:
        """Diagonal in the joint number basis (real part)."""
        return self.matrix.diagonal().real.copy()

    def mode_populations(self, mode: int) -> np.ndarray:
        """Marginal occupation distribution of one mode."""
        p = self.populations().reshape(self.dims.dims)
        axes = tuple(k for k in range(self.dims.n_modes) if k != mode)
        return p.sum(axis=axes) if axes else p

    def mode_occupation(self, mode: int) -> float:
        p = self.mode_populations(mode)
        return float(np.dot(p, np.arange(p.size)))

    def validate(self, *, psd_tol: float = PSD_TOL, unit_trace: bool = False,
                 trace_tol: float = 1e-9) -> "FockDensityMatrix":
        """Full physicality check; raises ValueError on violation."""
        if unit_trace and abs(self.trace() - 1.0) > trace_tol:
            raise ValueError(f"trace {self.trace()!r} not 1 within {trace_tol}")
        evals = np.linalg.eigvalsh(self.matrix)
        if evals[0] < -psd_tol:
            raise ValueError(f"minimum eigenvalue {evals[0]:.3e} below -{psd_tol}")
        return self


def vacuum(dims) -> FockDensityMatrix:
    dims = _as_dims(dims)
    m = np.zeros((dims.size, dims.size), dtype=complex)
    m[0, 0] = 1.0
    return FockDensityMatrix(dims, m)


def number_ket(dims, occupations: Sequence[int]) -> FockKet:
    dims = _as_dims(dims)
    amps = np.zeros(dims.size, dtype=complex)
    amps[dims.flat_index(occupations)] = 1.0
    return FockKet(dims, amps)


def tensor(a: FockDensityMatrix, b: FockDensityMatrix) -> FockDensityMatrix:
    """Joint state a (x) b; b's modes are appended after a's."""
    dims = ModeDims(a.dims.dims + b.dims.dims)
    return FockDensityMatrix(dims, np.kron(a.matrix, b.matrix))


def tensor_ket(a: FockKet, b: FockKet) -> FockKet:
    dims = ModeDims(a.dims.dims + b.dims.dims)
    return FockKet(dims, np.kron(a.amplitudes, b.amplitudes))


def partial_trace(rho: FockDensityMatrix, mode: int) -> FockDensityMatrix:
    """Trace out one mode; remaining modes keep their relative order."""
    dims = rho.dims
    if dims.n_modes < 2:
        raise ValueError("partial trace needs at least two modes")
    if not 0 <= mode < dims.n_modes:
        raise ValueError(f"mode {mode} out of range")
    nm = dims.n_modes
    t = rho.matrix.reshape(dims.dims + dims.dims)
    t = np.trace(t, axis1=mode, axis2=nm + mode)
    new_dims = dims.drop(mode)
    return FockDensityMatrix(new_dims, t.reshape(new_dims.size, new_dims.size))


def condition_on_vacuum(rho: FockDensityMatrix, mode: int) -> FockDensityMatrix:
    """Project one mode onto vacuum and drop it: <0|rho|0> on that mode.

    The result is the subnormalized branch state; its trace is the
    probability of finding the mode in vacuum.  Raises when that
    probability vanishes (no branch to return).
    """
    dims = rho.dims
    if dims.n_modes < 2:
        raise ValueError("conditioning needs at least two modes")
    if not 0 <= mode < dims.n_modes:
        raise ValueError(f"mode {mode} out of range")
    nm = dims.n_modes
    t = rho.matrix.reshape(dims.dims + dims.dims)
    t = np.take(np.take(t, 0, axis=nm + mode), 0, axis=mode)
    new_dims = dims.drop(mode)
    block = t.reshape(new_dims.size, new_dims.size)
    if float(block.trace().real) <= 0.0:
        raise ValueError("vacuum branch has zero probability")
    return FockDensityMatrix(new_dims, block)


def partial_transpose(rho: FockDensityMatrix, modes) -> np.ndarray:
    """Transpose the listed mode(s); returns a plain (possibly non-PSD) matrix."""
    dims = rho.dims
    if dims.n_modes < 2:
        raise ValueError("partial transpose needs at least two modes")
    if isinstance(modes, (int, np.integer)):
        modes = (int(modes),)
    modes = tuple(sorted(set(int(k) for k in modes)))
    if not modes:
        raise ValueError("no modes given")
    if any(not 0 <= k < dims.n_modes for k in modes):
        raise ValueError(f"modes {modes} out of range")
    nm = dims.n_modes
    t = rho.matrix.reshape(dims.dims + dims.dims)
    order = list(range(2 * nm))
    for k in modes:
        order[k], order[nm + k] = order[nm + k], order[k]
    return np.ascontiguousarray(t.transpose(order).reshape(dims.size, dims.size))


def _pair_generator(da: int, db: int, kind: str) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1.0, da)), 1)  # annihilation, a[n-1, n] = sqrt(n)
    b = np.diag(np.sqrt(np.arange(1.0, db)), 1)
    if kind == "beamsplitter":
        return np.kron(a.T, b) + np.kron(a, b.T)
    if kind == "two_mode_squeeze":
        return np.kron(a.T, b.T) + np.kron(a, b)
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


@functools.lru_cache(maxsize=16)
def pair_generator_eigensystem(da: int, db: int, kind: str):
    """Eigenvalues and (real orthogonal) eigenvectors of the pair generator."""
    w, v = np.linalg.eigh(_pair_generator(da, db, kind))
    return _freeze(w), _freeze(v)


def two_mode_unitary(da: int, db: int, kind: str, angle: float) -> np.ndarray:
    """exp(-i * angle * K) on the pair space, K the Hermitian pair generator."""
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")
    angle = float(angle)
    if not np.isfinite(angle):
        raise ValueError("angle must be finite")
    w, v = pair_generator_eigensystem(int(da), int(db), kind)
    return (v * np.exp(-1j * angle * w)) @ v.T


def _apply_pair_matrix(mat: np.ndarray, dims: ModeDims, i: int, j: int,
                       u: np.ndarray, *, conjugate: bool) -> np.ndarray:
    """Left-multiply u on ket axes (i, j); optionally u* on the bra axes."""
    nm = dims.n_modes
    pair = dims.dims[i] * dims.dims[j]
    t = mat.reshape(dims.dims + dims.dims)
    t = np.moveaxis(t, (i, j), (0, 1))
    shp = t.shape
    t = (u @ t.reshape(pair, -1)).reshape(shp)
    t = np.moveaxis(t, (0, 1), (i, j))
    if conjugate:
        t = np.moveaxis(t, (nm + i, nm + j), (0, 1))
        shp = t.shape
        t = (u.conj() @ t.reshape(pair, -1)).reshape(shp)
        t = np.moveaxis(t, (0, 1), (nm + i, nm + j))
    return np.ascontiguousarray(t.reshape(mat.shape))


def truncation_leak(state, modes) -> float:
    """Fraction of the trace on the top Fock shell of any listed mode.

    Defined as 1 - (interior weight)/(total weight), interior meaning
    occupation <= dim - 2 in every listed mode, plus any trace deficit
    relative to 1.  Zero for states comfortably inside the basis.
    """
    if isinstance(modes, (int, np.integer)):
        modes = (int(modes),)
    dims = state.dims
    p = state.populations().reshape(dims.dims)
    total = float(p.sum())
    if total <= 0.0:
        return 1.0
    sl = [slice(None)] * dims.n_modes
    for k in modes:
        sl[k] = slice(0, dims.dims[k] - 1)
    interior = float(p[tuple(sl)].sum())
    return max(0.0, 1.0 - interior / total) + max(0.0, 1.0 - total)


def apply_two_mode_exponential(state, mode_a: int, mode_b: int, kind: str,
                               angle: float, *, leak_tol: float = DEFAULT_LEAK_TOL):
    """Apply exp(-i*angle*K) coupling two modes of a ket or density matrix.

    kind="beamsplitter" uses K = a^dag b + a b^dag (occupation preserving;
    transferred amplitudes pick up -i per excitation).  kind="two_mode_squeeze"
    uses K = a^dag b^dag + a b and afterwards checks the truncation leak of
    the two squeezed modes against ``leak_tol``.

    Returns the same type as the input.
    """
    dims = state.dims
    mode_a, mode_b = int(mode_a), int(mode_b)
    if mode_a == mode_b:
        raise ValueError("the two modes must be distinct")
    for k in (mode_a, mode_b):
        if not 0 <= k < dims.n_modes:
            raise ValueError(f"mode {k} out of range")
    if isinstance(state, FockKet):
        # kets never need the dense pair unitary: go through the cached
        # eigenbasis (two matvecs instead of an O(d^3) matrix build)
        if kind not in GENERATOR_KINDS:
            raise ValueError(
                f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")
        angle = float(angle)
        if not np.isfinite(angle):
            raise ValueError("angle must be finite")
        w, v = pair_generator_eigensystem(dims.dims[mode_a], dims.dims[mode_b], kind)
        pair = dims.dims[mode_a] * dims.dims[mode_b]
        t = state.amplitudes.reshape(dims.dims)
        t = np.moveaxis(t, (mode_a, mode_b), (0, 1))
        shp = t.shape
        y = v.T @ t.reshape(pair, -1)
        y *= np.exp(-1j * angle * w)[:, None]
        t = (v @ y).reshape(shp)
        t = np.moveaxis(t, (0, 1), (mode_a, mode_b))
        out = FockKet(dims, t.reshape(-1))
    else:
        u = two_mode_unitary(dims.dims[mode_a], dims.dims[mode_b], kind, angle)
        m = _apply_pair_matrix(state.matrix, dims, mode_a, mode_b, u, conjugate=True)
        out = FockDensityMatrix(dims, m)
    if kind == "two_mode_squeeze":
        leak = truncation_leak(out, (mode_a, mode_b))
        if leak > leak_tol:
            raise TruncationLeakError(leak, leak_tol, context="two-mode squeeze")
    return out


def apply_phase_rotation(state, mode: int, angle: float):
    """Single-mode phase rotation exp(i*angle*n) on kets or density matrices."""
    dims = state.dims
    if not 0 <= mode < dims.n_modes:
        raise ValueError(f"mode {mode} out of range")
    occ = np.indices(dims.dims)[mode].reshape(-1)
    ph = np.exp(1j * float(angle) * occ)
    if isinstance(state, FockKet):
        return FockKet(dims, state.amplitudes * ph)
    return FockDensityMatrix(dims, state.matrix * np.outer(ph, ph.conj()))

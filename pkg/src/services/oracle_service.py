from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
import structlog

from models.state_functional import FunctionalKind, StateFunctional
from models.surd import ParameterError, SurdScalar
from models.tensor_element import TensorElement
from models.torus_element import Monomial, TorusElement

DEFAULT_TRUNCATION = 16


@dataclass(frozen=True)
class TruncatedRep:
    """Compression of an element to the Fourier basis e_{j,k}, |j|, |k| <= N.

    Basis vectors are flattened row-major on (j, k); the vacuum e_{0,0} sits
    in the middle. Every entry of the compression is exact; only products of
    compressions lose accuracy near the boundary.
    """

    truncation: int
    theta: SurdScalar
    matrix: np.ndarray

    @property
    def side(self) -> int:
        return 2 * self.truncation + 1

    def index(self, j: int, k: int) -> int:
        N = self.truncation
        if abs(j) > N or abs(k) > N:
            raise TruncationRangeError(f"Basis vector e_({j},{k}) is outside the truncation N={N}")
        return (j + N) * self.side + (k + N)

    def entry(self, target: Tuple[int, int], source: Tuple[int, int]) -> complex:
        """<e_target, A e_source>."""
        return complex(self.matrix[self.index(*target), self.index(*source)])

    def vector_state(self, j: int = 0, k: int = 0) -> complex:
        """<e_{j,k}, A e_{j,k}>; at the vacuum this is the trace."""
        i = self.index(j, k)
        return complex(self.matrix[i, i])

    def interior_indices(self, radius: int) -> np.ndarray:
        """Flat indices of basis vectors with |j|, |k| <= N - radius."""
        inner = self.truncation - radius
        if inner < 0:
            return np.empty(0, dtype=int)
        span = np.arange(-inner, inner + 1)
        j, k = np.meshgrid(span, span, indexing="ij")
        return ((j + self.truncation) * self.side + (k + self.truncation)).ravel()

    def is_unitary_on(self, radius: int, tol: float = 1e-12) -> bool:
        cols = self.interior_indices(radius)
        block = self.matrix[:, cols]
        gram = block.conj().T @ block
        return bool(np.abs(gram - np.eye(len(cols))).max() <= tol)


class OracleService:
    """Independent operator model of the quantum torus on a truncated basis.

    u e_{j,k} = e^{i pi k theta} e_{j+1,k} and v e_{j,k} = e^{-i pi j theta} e_{j,k+1},
    hence u^m v^n e_{j,k} = e^{i pi theta (m (k+n) - n j)} e_{j+m,k+n}. The same
    formulas with -theta give the commuting copy used for mirrored couplings.
    """

    def __init__(self, truncation: int = DEFAULT_TRUNCATION):
        self.logger = structlog.get_logger("ncergo.oracle")
        if truncation < 1:
            raise ParameterError(f"Truncation must be positive, got {truncation}")
        self.truncation = truncation
        span = np.arange(-truncation, truncation + 1)
        self._j, self._k = np.meshgrid(span, span, indexing="ij")

    @property
    def side(self) -> int:
        return 2 * self.truncation + 1

    def _phases(self, theta: SurdScalar, mono: Monomial) -> np.ndarray:
        m, n = mono
        return np.exp(1j * np.pi * float(theta) * (m * (self._k + n) - n * self._j))

    def _require_inside(self, monomials: Iterable[Tuple[int, ...]]) -> None:
        for mono in monomials:
            if max((abs(e) for e in mono), default=0) > self.truncation:
                raise TruncationRangeError(
                    f"Monomial {tuple(mono)} exceeds truncation N={self.truncation}"
                )

    # -- matrices ---------------------------------------------------------------

    def matrix_rep(self, a: TorusElement) -> TruncatedRep:
        """Dense compression of ``a``.

        Raises:
            TruncationRangeError: when a monomial of ``a`` leaves [-N, N]^2
        """
        self._require_inside(a.coeffs)
        side = self.side
        matrix = np.zeros((side * side, side * side), dtype=complex)
        tj, tk, source, values = self._entries(a.theta, a.terms(), self._j.ravel(), self._k.ravel())
        np.add.at(matrix, (self._flat(tj, tk), source), values)
        return TruncatedRep(self.truncation, a.theta, matrix)

    def _flat(self, j: np.ndarray, k: np.ndarray) -> np.ndarray:
        return (j + self.truncation) * self.side + (k + self.truncation)

    def _entries(
        self, theta: SurdScalar, terms: Iterable[Tuple[Monomial, complex]], j: np.ndarray, k: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Nonzero entries of sum coeff * u^m v^n on the basis vectors e_{j[i], k[i]}.

        Returns target rows, target columns, the source position i and the value
        of every entry that lands inside the truncation.
        """
        N, t = self.truncation, float(theta)
        position = np.arange(len(j))
        tj, tk, source, values = [], [], [], []
        for (m, n), coeff in terms:
            inside = (np.abs(j + m) <= N) & (np.abs(k + n) <= N)
            sj, sk = j[inside], k[inside]
            tj.append(sj + m)
            tk.append(sk + n)
            source.append(position[inside])
            values.append(coeff * np.exp(1j * np.pi * t * (m * (sk + n) - n * sj)))
        if not values:
            empty = np.empty(0, dtype=int)
            return empty, empty, empty, np.empty(0, dtype=complex)
        return np.concatenate(tj), np.concatenate(tk), np.concatenate(source), np.concatenate(values)

    @staticmethod
    def _largest_entry(keys: np.ndarray, values: np.ndarray) -> float:
        """Largest |sum of values sharing a key|, i.e. max |A - B| for a sparse A - B."""
        if len(keys) == 0:
            return 0.0
        _, slot = np.unique(keys, return_inverse=True)
        real = np.bincount(slot, weights=values.real)
        imag = np.bincount(slot, weights=values.imag)
        return float(np.hypot(real, imag).max())

    def basis_image(
        self, theta: SurdScalar, mono: Monomial, j: int, k: int
    ) -> Tuple[complex, Tuple[int, int]]:
        """Phase and target of u^m v^n e_{j,k}, without truncation."""
        m, n = mono
        phase = np.exp(1j * np.pi * float(theta) * (m * (k + n) - n * j))
        return complex(phase), (j + m, k + n)

    # -- vectors ------------------------------------------------------------------

    def vacuum(self) -> np.ndarray:
        grid = np.zeros((self.side, self.side), dtype=complex)
        grid[self.truncation, self.truncation] = 1
        return grid

    def apply_monomial(self, theta: SurdScalar, mono: Monomial, grid: np.ndarray) -> np.ndarray:
        """u^m v^n applied to a vector laid out on the (j, k) grid; mass leaving the grid is dropped."""
        m, n = mono
        side = self.side
        out = np.zeros_like(grid)
        src_j = slice(max(0, -m), min(side, side - m))
        dst_j = slice(max(0, m), min(side, side + m))
        src_k = slice(max(0, -n), min(side, side - n))
        dst_k = slice(max(0, n), min(side, side + n))
        out[dst_j, dst_k] = (self._phases(theta, mono) * grid)[src_j, src_k]
        return out

    def _coupled_vector(self, functional: StateFunctional, c: TensorElement) -> np.ndarray:
        """delta(c) Omega on the single Hilbert space of the coupled kinds."""
        vector = np.zeros((self.side, self.side), dtype=complex)
        for mono, coeff in c.terms():
            if functional.kind is FunctionalKind.KAPPA_D:
                # v^k (x) z^m acts as v^(k+m) once D kills u and w powers
                right = self.apply_monomial(c.theta1, Monomial(0, mono.m), self.vacuum())
                vector += coeff * self.apply_monomial(c.theta1, Monomial(0, mono.k), right)
            else:
                right = self.apply_monomial(c.theta2, mono.right, self.vacuum())
                vector += coeff * self.apply_monomial(c.theta1, mono.left, right)
        return vector

    def _reduce(self, functional: StateFunctional, c: TensorElement) -> TensorElement:
        if functional.kind in (FunctionalKind.KAPPA_D, FunctionalKind.OMEGA_REL):
            return c.restrict(lambda mono: mono.j == 0 and mono.l == 0)
        return c

    def _check_coupled_support(self, c: TensorElement) -> None:
        for mono in c.coeffs:
            if max(abs(mono.j) + abs(mono.l), abs(mono.k) + abs(mono.m)) > self.truncation:
                raise TruncationRangeError(
                    f"Monomial {tuple(mono)} exceeds truncation N={self.truncation}"
                )

    def vacuum_expectation(self, functional: StateFunctional, c: TensorElement) -> complex:
        """<Omega, delta(E(c)) Omega> computed with operators, E the kind's expectation."""
        functional.check_element(c)
        N = self.truncation
        if functional.kind is FunctionalKind.PRODUCT_TRACE:
            self._require_inside(c.coeffs)
            total = 0j
            for mono, coeff in c.terms():
                left = self.apply_monomial(c.theta1, mono.left, self.vacuum())[N, N]
                right = self.apply_monomial(c.theta2, mono.right, self.vacuum())[N, N]
                total += coeff * left * right
            return complex(total)
        reduced = self._reduce(functional, c)
        self._check_coupled_support(reduced)
        return complex(self._coupled_vector(functional, reduced)[N, N])

    def vacuum_norm_squared(self, functional: StateFunctional, c: TensorElement) -> float:
        """||delta(c) Omega||^2 for the kinds whose delta is a *-homomorphism.

        For those kinds this equals the functional at c* c.
        """
        functional.check_element(c)
        if functional.kind is FunctionalKind.PRODUCT_TRACE:
            self._require_inside(c.coeffs)
            terms = list(c.terms())
            if not terms:
                return 0.0
            coeffs = np.array([coeff for _, coeff in terms])
            left = np.stack(
                [self.apply_monomial(c.theta1, mono.left, self.vacuum()).ravel() for mono, _ in terms]
            )
            right = np.stack(
                [self.apply_monomial(c.theta2, mono.right, self.vacuum()).ravel() for mono, _ in terms]
            )
            # Gram matrix of the product vectors (a_i Omega) (x) (b_i Omega)
            gram = (left.conj() @ left.T) * (right.conj() @ right.T)
            return float(np.real(coeffs.conj() @ gram @ coeffs))
        if functional.kind is FunctionalKind.KAPPA_DIAG:
            self._check_coupled_support(c)
            vector = self._coupled_vector(functional, c)
            return float(np.vdot(vector, vector).real)
        raise ParameterError(f"{functional.kind.value} is not a homomorphic vector state")

    # -- comparisons ----------------------------------------------------------------

    def mul_deviation(self, a: TorusElement, b: TorusElement) -> float:
        """Largest entrywise gap between rep(ab) and rep(a) rep(b) on columns
        whose image under b stays inside the truncation.

        Works on the sparse entries only: b, then a, is pushed through the
        interior basis vectors and compared with ab on the same vectors.
        """
        ab = a * b
        for element in (a, b, ab):
            self._require_inside(element.coeffs)
        inner = self.truncation - b.support_radius()
        if inner < 0:
            return 0.0
        span = np.arange(-inner, inner + 1)
        j, k = (axis.ravel() for axis in np.meshgrid(span, span, indexing="ij"))
        width = len(j)
        bj, bk, column, b_values = self._entries(b.theta, b.terms(), j, k)
        pj, pk, via, a_values = self._entries(a.theta, a.terms(), bj, bk)
        qj, qk, q_column, q_values = self._entries(ab.theta, ab.terms(), j, k)
        keys = np.concatenate([self._flat(pj, pk) * width + column[via], self._flat(qj, qk) * width + q_column])
        values = np.concatenate([b_values[via] * a_values, -q_values])
        return self._largest_entry(keys, values)

    def adjoint_deviation(self, a: TorusElement) -> float:
        self._require_inside(a.coeffs)
        star = a.adjoint()
        size = self.side * self.side
        j, k = self._j.ravel(), self._k.ravel()
        tj, tk, source, values = self._entries(a.theta, a.terms(), j, k)
        sj, sk, s_source, s_values = self._entries(star.theta, star.terms(), j, k)
        # rep(a)^* puts conj(value) at (source, target)
        keys = np.concatenate([source * size + self._flat(tj, tk), self._flat(sj, sk) * size + s_source])
        return self._largest_entry(keys, np.concatenate([values.conj(), -s_values]))

    def trace_deviation(self, a: TorusElement) -> float:
        """|<e_0, rep(a) e_0> - tau(a)|."""
        self._require_inside(a.coeffs)
        origin = np.zeros(1, dtype=int)
        tj, tk, _, values = self._entries(a.theta, a.terms(), origin, origin)
        return abs(complex(values[(tj == 0) & (tk == 0)].sum()) - a.trace())

    def compare(self, a: TorusElement, b: Optional[TorusElement] = None) -> Tuple[float, float, float]:
        """(mul, adjoint, trace) deviations for one sample."""
        b = a if b is None else b
        deviations = (self.mul_deviation(a, b), self.adjoint_deviation(a), self.trace_deviation(a))
        self.logger.debug("Oracle comparison", theta=str(a.theta), deviations=deviations)
        return deviations


class TruncationRangeError(ValueError):
    """Raised when an element's support does not fit the truncated basis."""
    pass

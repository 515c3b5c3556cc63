"""N-th order coincidence correlation functions for two-path photon states.

Two evaluation routes are provided on purpose:

* ``noon_cf`` -- closed forms for the two-wavepacket structure, O(1) per
  point.  With p = N/2, branch amplitudes alpha_{zeta X} (detector zeta,
  packet X) and single-photon overlap gamma:

      numerator  = (N!/2) |e^{i N theta} (a_aL a_bL)^p + (a_aR a_bR)^p|^2
      denom_zeta = (N!/(2 p!)) [ |a_zL|^{2p} + |a_zR|^{2p}
                   + 2 Re( e^{i N theta} (a_zR^*)^p (a_zL)^p (gamma^*)^p ) ]
      state_norm = 1 + Re( e^{i N theta} (gamma^*)^N )

* ``noon_cf_oracle`` -- brute-force Wick evaluation of the same matrix
  elements from explicit ladder-operator sequences.  It exists to validate
  every exponent and factorial of the closed forms and is guarded to small
  sizes.

The normalized value is numerator * state_norm / (denom_a * denom_b); the
0/0 limit (blocked path) is resolved to 1 under explicit floors, never a
silent NaN.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import (
    ConfigError,
    IndeterminateCFError,
    NumericalError,
    OracleSizeError,
)
from .modes import ModeBasis, field_coefficients
from .packets import DetectorSpec, detector_amplitude, overlap
from .states import CoherentStateSpec, NoonStateSpec

ORACLE_MAX_FORMS = 16
REAL_TOLERANCE = 1e-10  # relative imaginary residue accepted in real parts


@dataclass(frozen=True)
class LadderForm:
    """A mode-summed ladder operator: sum_i coeffs[i] * a_i (or a_i^dagger).

    Coefficients are stored exactly as they multiply the raw operators; any
    conjugation belongs to the caller at construction time.  Contractions
    are the plain dot product of an annihilation form's coefficients with a
    creation form's.
    """

    kind: str  # "creation" | "annihilation"
    coeffs: np.ndarray

    def __post_init__(self):
        if self.kind not in ("creation", "annihilation"):
            raise ConfigError(f"unknown ladder kind {self.kind!r}")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ConfigError("ladder coefficients must be a nonempty vector")
        if not np.all(np.isfinite(c)):
            raise ConfigError("ladder coefficients must be finite")
        if float(np.linalg.norm(c)) == 0.0:
            raise ConfigError("ladder coefficients must have nonzero norm")
        object.__setattr__(self, "coeffs", c)


def creation(coeffs) -> LadderForm:
    return LadderForm("creation", np.asarray(coeffs))


def annihilation(coeffs) -> LadderForm:
    return LadderForm("annihilation", np.asarray(coeffs))


def vacuum_expectation(forms: list[LadderForm]) -> complex:
    """<0| forms[0] forms[1] ... |0> by summing full contractions.

    Each annihilation form must contract with a creation form strictly to
    its right; every complete pairing contributes the product of its pair
    values (plain dot products).  Unequal creation/annihilation counts or no
    valid complete pairing give 0.  Bosonic operators carry no sign.
    """
    n = len(forms)
    if n > ORACLE_MAX_FORMS:
        raise OracleSizeError(
            f"sequence of {n} ladder forms exceeds the oracle guard "
            f"({ORACLE_MAX_FORMS})"
        )
    if n == 0:
        return 1.0 + 0.0j
    if n % 2 != 0:
        return 0.0 + 0.0j
    kinds = [f.kind for f in forms]
    if kinds.count("annihilation") != kinds.count("creation"):
        return 0.0 + 0.0j

    # pair value matrix: ann k with cre l, k < l
    pair = np.zeros((n, n), dtype=complex)
    for k in range(n):
        if kinds[k] != "annihilation":
            continue
        for l in range(k + 1, n):
            if kinds[l] == "creation":
                pair[k, l] = np.dot(forms[k].coeffs, forms[l].coeffs)

    memo: dict[int, complex] = {}
    full = (1 << n) - 1

    def paired_sum(mask: int) -> complex:
        if mask == full:
            return 1.0 + 0.0j
        cached = memo.get(mask)
        if cached is not None:
            return cached
        p = 0
        while mask >> p & 1:
            p += 1
        if kinds[p] == "creation":
            memo[mask] = 0.0 + 0.0j
            return 0.0 + 0.0j
        total = 0.0 + 0.0j
        base = mask | (1 << p)
        for q in range(p + 1, n):
            if mask >> q & 1 or kinds[q] != "creation":
                continue
            total += pair[p, q] * paired_sum(base | (1 << q))
        memo[mask] = total
        return total

    return complex(paired_sum(0))


@dataclass(frozen=True)
class CFComponents:
    """The pieces of one correlation-function evaluation.

    value = numerator * state_norm / (denom_alpha * denom_beta) unless the
    0/0 convention fired, in which case value = 1 and ``regularized`` is
    set.
    """

    numerator: float
    denom_alpha: float
    denom_beta: float
    state_norm: float
    value: float
    regularized: bool = False


def _real_part(z: complex, what: str) -> float:
    scale = max(abs(z), 1.0e-300)
    if abs(z.imag) > REAL_TOLERANCE * scale:
        raise NumericalError(
            f"{what} should be real; got imaginary residue {z.imag:.3e} "
            f"against magnitude {scale:.3e}"
        )
    return float(z.real)


def _check_nonnegative(x: float, what: str) -> float:
    if x < 0.0 and abs(x) > 1e-12:
        raise NumericalError(f"{what} should be nonnegative, got {x:.3e}")
    return max(x, 0.0)


def assemble_cf_value(
    numerator: float,
    denom_alpha: float,
    denom_beta: float,
    state_norm: float,
    num_floor: float = 0.0,
    den_floor_alpha: float = 0.0,
    den_floor_beta: float = 0.0,
) -> tuple[float, bool]:
    """Resolve the normalized CF value with the explicit 0/0 convention.

    Returns (value, regularized).  A vanishing denominator without a
    vanishing numerator is reported as IndeterminateCFError instead of
    silently producing 1 (or NaN).
    """
    num_small = numerator < num_floor
    a_small = denom_alpha < den_floor_alpha
    b_small = denom_beta < den_floor_beta
    if num_small and (a_small or b_small):
        return 1.0, True
    if a_small and b_small:
        raise IndeterminateCFError(
            "both detector responses below floor while the coincidence "
            "numerator is not; the CF is indeterminate"
        )
    denom = denom_alpha * denom_beta
    if denom <= 0.0:
        raise IndeterminateCFError(
            "zero detector response outside the 0/0 window; the CF is "
            "indeterminate"
        )
    return numerator * state_norm / denom, False


def _branch_amplitudes(
    basis: ModeBasis,
    state: NoonStateSpec,
    det_alpha: DetectorSpec,
    det_beta: DetectorSpec,
) -> tuple[complex, complex, complex, complex]:
    a_al = detector_amplitude(basis, state.g_left, det_alpha)
    a_ar = detector_amplitude(basis, state.g_right, det_alpha)
    a_bl = detector_amplitude(basis, state.g_left, det_beta)
    a_br = detector_amplitude(basis, state.g_right, det_beta)
    return a_al, a_ar, a_bl, a_br


def _validate_folds(state: NoonStateSpec, *dets: DetectorSpec) -> None:
    for det in dets:
        if det.fold != state.fold:
            raise ConfigError(
                f"detector fold {det.fold} != N/2 = {state.fold} "
                "(equal-split convention)"
            )


def closed_form_components(
    n_photons: int,
    theta: float,
    gamma: complex,
    a_al: complex,
    a_ar: complex,
    a_bl: complex,
    a_br: complex,
) -> tuple[float, float, float, float]:
    """Closed-form numerator, denominators and state norm from amplitudes."""
    n = n_photons
    p = n // 2
    phase = np.exp(1j * n * theta)

    branch_l = (a_al * a_bl) ** p
    branch_r = (a_ar * a_br) ** p
    numerator = (factorial(n) / 2.0) * abs(phase * branch_l + branch_r) ** 2

    pref = factorial(n) / (2.0 * factorial(p))

    def denom(al: complex, ar: complex) -> float:
        cross = phase * np.conj(ar) ** p * al**p * np.conj(gamma) ** p
        val = abs(al) ** (2 * p) + abs(ar) ** (2 * p) + 2.0 * cross.real
        return pref * val

    denom_a = denom(a_al, a_ar)
    denom_b = denom(a_bl, a_br)
    state_norm = 1.0 + (phase * np.conj(gamma) ** n).real

    numerator = _check_nonnegative(numerator, "coincidence numerator")
    denom_a = _check_nonnegative(denom_a, "detector-alpha response")
    denom_b = _check_nonnegative(denom_b, "detector-beta response")
    if state_norm <= 0.0:
        raise NumericalError(f"state norm must be positive, got {state_norm:.3e}")
    return numerator, denom_a, denom_b, state_norm


def noon_cf(
    basis: ModeBasis,
    state: NoonStateSpec,
    det_alpha: DetectorSpec,
    det_beta: DetectorSpec,
    eps_reg: float = 0.0,
    *,
    num_floor: float | None = None,
    den_floor_alpha: float | None = None,
    den_floor_beta: float | None = None,
) -> CFComponents:
    """Closed-form N-th order CF of the two-path state at a detector pair.

    ``eps_reg`` is an absolute floor applied to the numerator and both
    denominators for the 0/0 convention; sweep drivers pass scale-adjusted
    floors through the keyword arguments instead (the keyword floors, when
    given, override eps_reg).
    """
    if eps_reg < 0.0:
        raise ConfigError("eps_reg must be >= 0")
    _validate_folds(state, det_alpha, det_beta)
    gamma = overlap(state.g_left, state.g_right)
    a_al, a_ar, a_bl, a_br = _branch_amplitudes(basis, state, det_alpha, det_beta)
    numerator, denom_a, denom_b, state_norm = closed_form_components(
        state.n_photons, state.theta, gamma, a_al, a_ar, a_bl, a_br
    )
    value, regularized = assemble_cf_value(
        numerator,
        denom_a,
        denom_b,
        state_norm,
        num_floor=eps_reg if num_floor is None else num_floor,
        den_floor_alpha=eps_reg if den_floor_alpha is None else den_floor_alpha,
        den_floor_beta=eps_reg if den_floor_beta is None else den_floor_beta,
    )
    return CFComponents(numerator, denom_a, denom_b, state_norm, value, regularized)


def _oracle_matrix_element(
    middle: list[LadderForm],
    state: NoonStateSpec,
) -> complex:
    """<psi| middle |psi> for the two-branch input state via Wick sums.

    The state is (1/sqrt(2 N!)) [e^{i N theta} (A_L^dag)^N + (A_R^dag)^N]|0>.
    """
    n = state.n_photons
    phase = np.exp(1j * n * state.theta)
    branch_phase = {"L": phase, "R": 1.0 + 0.0j}
    branch_g = {"L": state.g_left.g, "R": state.g_right.g}

    total = 0.0 + 0.0j
    for bra in ("L", "R"):
        bra_forms = [annihilation(np.conj(branch_g[bra]))] * n
        for ket in ("L", "R"):
            ket_forms = [creation(branch_g[ket])] * n
            amp = vacuum_expectation(bra_forms + middle + ket_forms)
            total += np.conj(branch_phase[bra]) * branch_phase[ket] * amp
    return total / (2.0 * factorial(n))


def noon_cf_oracle(
    basis: ModeBasis,
    state: NoonStateSpec,
    det_alpha: DetectorSpec,
    det_beta: DetectorSpec,
    eps_reg: float = 0.0,
    *,
    num_floor: float | None = None,
    den_floor_alpha: float | None = None,
    den_floor_beta: float | None = None,
) -> CFComponents:
    """Brute-force Wick assembly of the same CF; ground truth for noon_cf.

    Guarded to N <= 4 so no expectation sequence exceeds the
    vacuum_expectation size limit.
    """
    n = state.n_photons
    p = state.fold
    if n > 4:
        raise OracleSizeError(f"oracle supports N <= 4 photons, got {n}")
    _validate_folds(state, det_alpha, det_beta)

    c_a = field_coefficients(basis, det_alpha.cell_index, det_alpha.time)
    c_b = field_coefficients(basis, det_beta.cell_index, det_beta.time)
    a_dead = float(np.linalg.norm(c_a)) == 0.0
    b_dead = float(np.linalg.norm(c_b)) == 0.0

    # a dead detector cell annihilates every contraction it appears in;
    # LadderForm rejects zero coefficient vectors, so short-circuit instead
    if a_dead or b_dead:
        numerator = 0.0
    else:
        num_middle = (
            [creation(np.conj(c_a))] * p
            + [creation(np.conj(c_b))] * p
            + [annihilation(c_b)] * p
            + [annihilation(c_a)] * p
        )
        numerator = _real_part(
            _oracle_matrix_element(num_middle, state), "oracle numerator"
        )
    if a_dead:
        denom_a = 0.0
    else:
        denom_a_middle = [creation(np.conj(c_a))] * p + [annihilation(c_a)] * p
        denom_a = _real_part(
            _oracle_matrix_element(denom_a_middle, state), "oracle alpha response"
        )
    if b_dead:
        denom_b = 0.0
    else:
        denom_b_middle = [creation(np.conj(c_b))] * p + [annihilation(c_b)] * p
        denom_b = _real_part(
            _oracle_matrix_element(denom_b_middle, state), "oracle beta response"
        )
    state_norm = _real_part(_oracle_matrix_element([], state), "oracle state norm")

    numerator = _check_nonnegative(numerator, "oracle numerator")
    denom_a = _check_nonnegative(denom_a, "oracle alpha response")
    denom_b = _check_nonnegative(denom_b, "oracle beta response")
    if state_norm <= 0.0:
        raise NumericalError(f"oracle state norm must be positive: {state_norm:.3e}")

    value, regularized = assemble_cf_value(
        numerator,
        denom_a,
        denom_b,
        state_norm,
        num_floor=eps_reg if num_floor is None else num_floor,
        den_floor_alpha=eps_reg if den_floor_alpha is None else den_floor_alpha,
        den_floor_beta=eps_reg if den_floor_beta is None else den_floor_beta,
    )
    return CFComponents(numerator, denom_a, denom_b, state_norm, value, regularized)


def coherent_baseline(
    basis: ModeBasis, state: CoherentStateSpec, det: DetectorSpec
) -> float:
    """Single-detector intensity of the classical two-path coherent state.

    I(theta) = n_mean * |e^{i theta} alpha_L + alpha_R|^2 -- the classical
    interference fringe, period 2 pi in theta.  (The normalized N-th order
    CF of a coherent input is identically 1; this intensity pattern is what
    a classical fringe plot shows.)
    """
    a_l = detector_amplitude(basis, state.g_left, det)
    a_r = detector_amplitude(basis, state.g_right, det)
    return float(
        state.mean_photon_number * abs(np.exp(1j * state.theta) * a_l + a_r) ** 2
    )

"""Hybrid qudit-qumode states, qumode overlaps, and the DV-like / truly hybrid classification."""

import enum
import json
import math
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from . import fock
from .errors import CutoffInsufficient, InvalidFamilyParams, InvalidState
from .gram import DEFAULT_RANK_TOL, build_gram, inverse_gram_schmidt, numerical_rank

UNBOUNDED = math.inf
OVERLAP_BUDGET = 1e-10
MAX_ADAPTIVE_CUTOFF = 1500
REF_TOL = 1e-12
NORM_TOL = 1e-12


# -- qumode references -------------------------------------------------------

class QumodeRef:
    """Base for normalized qumode states referenced by a hybrid state."""

    def fock_vector(self, space):
        """Normalized Fock-basis vector of this state in ``space``."""
        raise NotImplementedError

    def required_cutoff(self, budget=OVERLAP_BUDGET):
        raise NotImplementedError

    def same_as(self, other, tol=REF_TOL):
        raise NotImplementedError


@dataclass(frozen=True)
class Coherent(QumodeRef):
    amplitude: complex

    @property
    def normalization(self):
        return 1.0

    def fock_vector(self, space):
        return fock.coherent_vector(self.amplitude, space)

    def required_cutoff(self, budget=OVERLAP_BUDGET):
        return fock.coherent_required_cutoff(self.amplitude, budget)

    def same_as(self, other, tol=REF_TOL):
        return isinstance(other, Coherent) and abs(self.amplitude - other.amplitude) <= tol


@dataclass(frozen=True)
class PhotonAddedCoherent(QumodeRef):
    """Normalized ``a^dag^k |alpha>``."""

    k: int
    amplitude: complex

    def __post_init__(self):
        if self.k < 0:
            raise InvalidState(f"photon number k must be >= 0, got {self.k}")

    @property
    def normalization(self):
        """Norm of the unnormalized ``a^dag^k |alpha>``, ``sqrt(k! L_k(-|alpha|^2))``."""
        return float(np.sqrt(fock.photon_added_norm_sq(self.k, self.amplitude)))

    def fock_vector(self, space):
        return fock.photon_added_ket(self.k, self.amplitude, space, normalize=True)

    def required_cutoff(self, budget=OVERLAP_BUDGET):
        return fock.photon_added_required_cutoff(self.k, self.amplitude, budget)

    def same_as(self, other, tol=REF_TOL):
        return (
            isinstance(other, PhotonAddedCoherent)
            and self.k == other.k
            and abs(self.amplitude - other.amplitude) <= tol
        )


@dataclass(frozen=True)
class FockVector(QumodeRef):
    """A finite superposition of Fock states; coefficients are rescaled to unit norm."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs or not any(coeffs):
            raise InvalidState("Fock vector needs at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def normalization(self):
        return float(np.linalg.norm(self.coefficients))

    def fock_vector(self, space):
        c = np.asarray(self.coefficients) / self.normalization
        if len(c) > space.dim:
            if np.linalg.norm(c[space.dim:]) ** 2 > space.truncation_budget:
                raise CutoffInsufficient(
                    f"Fock vector has support up to n={len(c) - 1}, above cutoff {space.cutoff}",
                    suggested_cutoff=len(c) - 1,
                )
            c = c[:space.dim]
        out = np.zeros(space.dim, dtype=complex)
        out[:len(c)] = c
        return out

    def required_cutoff(self, budget=OVERLAP_BUDGET):
        return max(len(self.coefficients) - 1, 2)

    def same_as(self, other, tol=REF_TOL):
        if not isinstance(other, FockVector):
            return False
        a = np.asarray(self.coefficients) / self.normalization
        b = np.asarray(other.coefficients) / other.normalization
        n = max(len(a), len(b))
        a = np.pad(a, (0, n - len(a)))
        b = np.pad(b, (0, n - len(b)))
        return bool(np.max(np.abs(a - b)) <= tol)


def _adaptive_space(cutoff):
    if cutoff > MAX_ADAPTIVE_CUTOFF:
        raise CutoffInsufficient(
            f"required cutoff {cutoff} exceeds the adaptive limit {MAX_ADAPTIVE_CUTOFF}",
            suggested_cutoff=cutoff,
        )
    return fock.TruncatedFockSpace(max(cutoff, 2), OVERLAP_BUDGET)


def coherent_overlap(alpha, beta):
    """``<alpha|beta>`` for coherent states."""
    alpha, beta = complex(alpha), complex(beta)
    return complex(np.exp(-abs(alpha) ** 2 / 2 - abs(beta) ** 2 / 2 + alpha.conjugate() * beta))


def overlap(a, b):
    """Inner product ``<a|b>`` of two normalized qumode references."""
    if isinstance(a, Coherent) and isinstance(b, Coherent):
        return coherent_overlap(a.amplitude, b.amplitude)
    space = _adaptive_space(max(a.required_cutoff(), b.required_cutoff()))
    return complex(np.vdot(a.fock_vector(space), b.fock_vector(space)))


# -- hybrid states -----------------------------------------------------------

@dataclass(frozen=True)
class ThermalChannelOutput:
    """Cat-entangled qubit-qumode state after a one-sided thermal photon-noise channel."""

    alpha: complex
    eta: float
    n_th: float


@dataclass(frozen=True)
class GeometricMixture:
    """Mixture of ``(|0>|sqrt(n) a> + |1>|-sqrt(n) a>)/sqrt(2)`` with weights ``(1-x) x^(n-1)``."""

    x: float
    alpha: float


@dataclass(frozen=True)
class Term:
    coeff: complex
    dv_index: int
    qumode: QumodeRef


@dataclass(frozen=True)
class Component:
    weight: float
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class HybridState:
    """Convex mixture of pure ``sum_m c_m |m> (x) |psi_m>`` components.

    Families whose decomposition needs infinitely many terms are carried by
    ``family`` alone; their ``components`` may then be empty.
    """

    dv_dim: int
    components: tuple = ()
    family: object = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.dv_dim < 2:
            raise InvalidState(f"qudit dimension must be >= 2, got {self.dv_dim}")
        if self.family is not None:
            _check_family(self.family)
        if not self.components:
            if self.family is None:
                raise InvalidState("a hybrid state without a family needs components")
            return
        total = 0.0
        for n, comp in enumerate(self.components):
            if not comp.weight > 0:
                raise InvalidState(f"component {n} has non-positive weight {comp.weight}")
            total += comp.weight
            seen = set()
            norm = 0.0
            for t in comp.terms:
                if not 0 <= t.dv_index < self.dv_dim:
                    raise InvalidState(f"dv_index {t.dv_index} outside 0..{self.dv_dim - 1}")
                if t.dv_index in seen:
                    raise InvalidState(f"component {n} repeats dv_index {t.dv_index}")
                seen.add(t.dv_index)
                norm += abs(t.coeff) ** 2
            if abs(norm - 1.0) > NORM_TOL:
                raise InvalidState(f"component {n} has sum |c|^2 = {norm!r}")
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidState(f"weights sum to {total!r}")

    def qumode_refs(self):
        """Distinct qumode references in order of first appearance."""
        refs = []
        for comp in self.components:
            for t in comp.terms:
                if not any(t.qumode.same_as(r) for r in refs):
                    refs.append(t.qumode)
        return refs

    def ref_index(self, qumode, refs):
        for i, r in enumerate(refs):
            if qumode.same_as(r):
                return i
        raise KeyError(qumode)


def _check_family(family):
    if isinstance(family, ThermalChannelOutput):
        if not 0.0 <= family.eta <= 1.0:
            raise InvalidFamilyParams(f"transmissivity must lie in [0, 1], got {family.eta}")
        if family.n_th < 0:
            raise InvalidFamilyParams(f"mean thermal photon number must be >= 0, got {family.n_th}")
    elif isinstance(family, GeometricMixture):
        if not 0.0 < family.x < 1.0:
            raise InvalidFamilyParams(f"x must lie in (0, 1), got {family.x}")
    else:
        raise InvalidFamilyParams(f"unknown family {family!r}")


def pure_state(dv_dim, terms):
    """Single-component state from ``(coeff, dv_index, qumode)`` triples."""
    return HybridState(dv_dim, (Component(1.0, tuple(Term(*t) for t in terms)),))


def qutrit_qumode_state(alpha):
    """``(|0>|0> + |1>|alpha> + |2>|-alpha>) / sqrt(3)``."""
    c = 1 / np.sqrt(3)
    return pure_state(3, [(c, 0, Coherent(0)), (c, 1, Coherent(alpha)), (c, 2, Coherent(-alpha))])


def mixed_qubit_qumode_state(p, alpha):
    """``p |phi+><phi+| + (1-p) |phi-><phi-|`` with ``|phi+-> = (|0>|0> + |1>|+-alpha>)/sqrt(2)``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidState(f"p must lie in [0, 1], got {p}")
    c = 1 / np.sqrt(2)
    comps = []
    for w, sign in ((p, 1), (1 - p, -1)):
        if w > 0:
            terms = (Term(c, 0, Coherent(0)), Term(c, 1, Coherent(sign * alpha)))
            comps.append(Component(w, terms))
    return HybridState(2, tuple(comps))


def cat_entangled_state(alpha):
    """``(|0>|alpha> + |1>|-alpha>) / sqrt(2)``."""
    c = 1 / np.sqrt(2)
    return pure_state(2, [(c, 0, Coherent(alpha)), (c, 1, Coherent(-alpha))])


def thermal_channel_output(alpha, eta, n_th):
    """Tagged output of the one-sided thermal channel acting on the cat-entangled state.

    Without thermal photons the output mixes ``(|0>|a> +- |1>|-a>)/sqrt(2)``,
    ``a = sqrt(eta) alpha``, with weights ``(1 +- kappa)/2`` where
    ``kappa = exp(-2 (1-eta) |alpha|^2)``; that finite decomposition is
    attached, as it is for ``eta = 1`` where the mode never meets the
    environment. Otherwise no finite decomposition exists.
    """
    family = ThermalChannelOutput(complex(alpha), float(eta), float(n_th))
    _check_family(family)
    if n_th > 0 and eta < 1:
        return HybridState(2, (), family)
    a = np.sqrt(eta) * complex(alpha)
    kappa = float(np.exp(-2 * (1 - eta) * abs(alpha) ** 2))
    c = 1 / np.sqrt(2)
    comps = []
    for w, sign in (((1 + kappa) / 2, 1), ((1 - kappa) / 2, -1)):
        if w > 0:
            comps.append(Component(w, (Term(c, 0, Coherent(a)), Term(sign * c, 1, Coherent(-a)))))
    return HybridState(2, tuple(comps), family)


def geometric_mixture(x, alpha):
    family = GeometricMixture(float(x), float(alpha))
    _check_family(family)
    if alpha == 0:
        c = 1 / np.sqrt(2)
        comp = Component(1.0, (Term(c, 0, Coherent(0)), Term(c, 1, Coherent(0))))
        return HybridState(2, (comp,), family)
    return HybridState(2, (), family)


# -- classification ----------------------------------------------------------

class Verdict(enum.Enum):
    PURE_DV_LIKE = "PureDVLike"
    MIXED_DV_LIKE = "MixedDVLike"
    TRULY_HYBRID = "TrulyHybrid"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    effective_qumode_dim: float
    mix_terms: float
    notes: tuple = field(default=())


def gram_of_refs(refs):
    return build_gram(lambda i, j: overlap(refs[i], refs[j]), len(refs))


def _classify_finite(state, rank_tol):
    refs = state.qumode_refs()
    rank = numerical_rank(gram_of_refs(refs), rank_tol)
    n = len(state.components)
    verdict = Verdict.PURE_DV_LIKE if n == 1 else Verdict.MIXED_DV_LIKE
    return Classification(verdict, rank, n)


def classify(state, rank_tol=DEFAULT_RANK_TOL):
    """Place a hybrid state in the pure DV-like / mixed DV-like / truly hybrid scheme."""
    fam = state.family
    if fam is None:
        return _classify_finite(state, rank_tol)
    _check_family(fam)
    if isinstance(fam, ThermalChannelOutput):
        if fam.eta == 1.0 or fam.n_th == 0:
            # no thermal photons reach the mode: finite decomposition applies
            if not state.components:
                state = thermal_channel_output(fam.alpha, fam.eta, fam.n_th)
            return _classify_finite(state, rank_tol)
        notes = ()
        if fam.eta == 0.0:
            notes = ("entanglement-broken: output is the input qubit marginal times a thermal state",)
        return Classification(Verdict.TRULY_HYBRID, UNBOUNDED, UNBOUNDED, notes)
    if isinstance(fam, GeometricMixture):
        if fam.alpha == 0:
            return _classify_finite(geometric_mixture(fam.x, 0.0), rank_tol)
        return Classification(Verdict.TRULY_HYBRID, UNBOUNDED, UNBOUNDED)
    raise InvalidFamilyParams(f"unknown family {fam!r}")


def effective_dimension_bound(dv_dims, mix_terms):
    """Upper bound ``M * prod(d_i)`` on the qumode dimension after orthonormalization."""
    if mix_terms < 1 or any(d < 1 for d in dv_dims):
        raise ValueError("dimensions and mix term count must be >= 1")
    return int(mix_terms) * int(np.prod(dv_dims, dtype=np.int64))


def embedding_of(state, rank_tol=DEFAULT_RANK_TOL):
    """Gram matrix, embedding, and ref list for a finite-decomposition state."""
    refs = state.qumode_refs()
    gram = gram_of_refs(refs)
    return refs, gram, inverse_gram_schmidt(gram, rank_tol)


# -- JSON --------------------------------------------------------------------

_NUMBER = {"type": "number"}
_QUMODE_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "coherent"}, "re": _NUMBER, "im": _NUMBER},
            "required": ["kind", "re"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "photon_added"},
                "k": {"type": "integer", "minimum": 0},
                "re": _NUMBER,
                "im": _NUMBER,
            },
            "required": ["kind", "k", "re"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "fock"},
                "coefficients": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
                },
            },
            "required": ["kind", "coefficients"],
            "additionalProperties": False,
        },
    ]
}

STATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "dv_dim": {"type": "integer", "minimum": 2},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "weight": {"type": "number", "exclusiveMinimum": 0},
                    "terms": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "properties": {
                                "re": _NUMBER,
                                "im": _NUMBER,
                                "dv_index": {"type": "integer", "minimum": 0},
                                "qumode": _QUMODE_SCHEMA,
                            },
                            "required": ["re", "dv_index", "qumode"],
                            "additionalProperties": False,
                        },
                    },
                },
                "required": ["weight", "terms"],
                "additionalProperties": False,
            },
        },
        "family": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "thermal_channel_output"},
                        "alpha_re": _NUMBER,
                        "alpha_im": _NUMBER,
                        "eta": _NUMBER,
                        "n_th": _NUMBER,
                    },
                    "required": ["kind", "alpha_re", "eta", "n_th"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "geometric_mixture"},
                        "x": _NUMBER,
                        "alpha": _NUMBER,
                    },
                    "required": ["kind", "x", "alpha"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "required": ["dv_dim"],
    "additionalProperties": False,
}


def _qumode_from_json(obj):
    kind = obj["kind"]
    if kind == "coherent":
        return Coherent(complex(obj["re"], obj.get("im", 0.0)))
    if kind == "photon_added":
        return PhotonAddedCoherent(int(obj["k"]), complex(obj["re"], obj.get("im", 0.0)))
    return FockVector(tuple(complex(re, im) for re, im in obj["coefficients"]))


def _qumode_to_json(ref):
    if isinstance(ref, Coherent):
        a = complex(ref.amplitude)
        return {"kind": "coherent", "re": a.real, "im": a.imag}
    if isinstance(ref, PhotonAddedCoherent):
        a = complex(ref.amplitude)
        return {"kind": "photon_added", "k": ref.k, "re": a.real, "im": a.imag}
    return {"kind": "fock", "coefficients": [[c.real, c.imag] for c in ref.coefficients]}


def state_from_dict(obj):
    """Build a :class:`HybridState` from its JSON object form (validated against the schema)."""
    jsonschema.validate(obj, STATE_SCHEMA)
    comps = []
    for c in obj.get("components", []):
        terms = tuple(
            Term(complex(t["re"], t.get("im", 0.0)), int(t["dv_index"]), _qumode_from_json(t["qumode"]))
            for t in c["terms"]
        )
        comps.append(Component(float(c["weight"]), terms))
    fam = obj.get("family")
    family = None
    if fam is not None and fam["kind"] == "thermal_channel_output":
        alpha = complex(fam["alpha_re"], fam.get("alpha_im", 0.0))
        if not comps:
            return thermal_channel_output(alpha, fam["eta"], fam["n_th"])
        family = ThermalChannelOutput(alpha, float(fam["eta"]), float(fam["n_th"]))
    elif fam is not None:
        if not comps:
            return geometric_mixture(fam["x"], fam["alpha"])
        family = GeometricMixture(float(fam["x"]), float(fam["alpha"]))
    return HybridState(int(obj["dv_dim"]), tuple(comps), family)


def state_from_json(text):
    """Parse JSON text; syntax errors surface as ``json.JSONDecodeError`` with line/column."""
    return state_from_dict(json.loads(text))


def state_to_dict(state):
    out = {
        "dv_dim": state.dv_dim,
        "components": [
            {
                "weight": c.weight,
                "terms": [
                    {
                        "re": complex(t.coeff).real,
                        "im": complex(t.coeff).imag,
                        "dv_index": t.dv_index,
                        "qumode": _qumode_to_json(t.qumode),
                    }
                    for t in c.terms
                ],
            }
            for c in state.components
        ],
        "family": None,
    }
    fam = state.family
    if isinstance(fam, ThermalChannelOutput):
        a = complex(fam.alpha)
        out["family"] = {
            "kind": "thermal_channel_output",
            "alpha_re": a.real,
            "alpha_im": a.imag,
            "eta": fam.eta,
            "n_th": fam.n_th,
        }
    elif isinstance(fam, GeometricMixture):
        out["family"] = {"kind": "geometric_mixture", "x": fam.x, "alpha": fam.alpha}
    return out

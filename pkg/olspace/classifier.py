"""Three-valued classification of Orlicz–Lorentz spaces.

Each rule turns analytic premises about φ and w into verdicts on the geometric properties of the
space. A verdict is only decided when every premise the rule uses is decided.
"""

import logging
import math
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import pydantic

from olspace.domain import Kind
from olspace.exceptions import UnsupportedSpaceError
from olspace.spaces import Side, SpaceSpec
from olspace.verdict import Verdict, all_of, any_of
from olspace.weights import ConstantWeight, PowerDecayWeight, Weight

logger = logging.getLogger(__name__)


class Property(str, Enum):
    RNP = "RNP"
    SD2P = "SD2P"
    D2P = "D2P"
    LD2P = "LD2P"
    DLD2P = "DLD2P"
    DD2P = "DD2P"
    DAUGAVET = "Daugavet"
    OC_SUBSPACE_M_IDEAL = "OrderContinuousSubspaceIsMIdeal"
    DUAL_OCTAHEDRAL = "DualOctahedral"
    DUAL_WEAKLY_OCTAHEDRAL = "DualWeaklyOctahedral"
    DUAL_LOCALLY_OCTAHEDRAL = "DualLocallyOctahedral"
    ISOMETRICALLY_L1 = "IsometricallyL1"


NO_RULE = "no rule applies"
OPEN_DAUGAVET_QUESTION = (
    "Open question: can the Lorentz space Λ_{1,w} with γ = ∞ have the Daugavet property, the DD2P or the DLD2P "
    "when w is not regular or when lim t/W(t) > 0 as t → 0⁺?"
)
DUAL_PROPERTIES = (Property.DUAL_OCTAHEDRAL, Property.DUAL_WEAKLY_OCTAHEDRAL, Property.DUAL_LOCALLY_OCTAHEDRAL)
DIAMETER_TWO_PROPERTIES = (Property.SD2P, Property.D2P, Property.LD2P)
DIAMETRAL_PROPERTIES = (Property.DAUGAVET, Property.DD2P, Property.DLD2P)

# (premise, conclusion): premise holds ⇒ conclusion holds, conclusion fails ⇒ premise fails
IMPLICATIONS: Tuple[Tuple[Property, Property], ...] = (
    (Property.DAUGAVET, Property.DD2P),
    (Property.DAUGAVET, Property.SD2P),
    (Property.DD2P, Property.DLD2P),
    (Property.DD2P, Property.D2P),
    (Property.DLD2P, Property.LD2P),
    (Property.SD2P, Property.D2P),
    (Property.D2P, Property.LD2P),
    (Property.DUAL_OCTAHEDRAL, Property.DUAL_WEAKLY_OCTAHEDRAL),
    (Property.DUAL_WEAKLY_OCTAHEDRAL, Property.DUAL_LOCALLY_OCTAHEDRAL),
)
# RNP holds ⇒ slices of the unit ball have arbitrarily small diameter
EXCLUSIONS: Tuple[Tuple[Property, Property], ...] = (
    (Property.RNP, Property.LD2P),
    (Property.RNP, Property.DLD2P),
)


class Premise(pydantic.BaseModel):
    """A checked condition on φ or w."""

    model_config = pydantic.ConfigDict(frozen=True)

    condition: str
    verdict: Verdict


class PropertyVerdict(pydantic.BaseModel):
    """Verdict on one property with the rule that produced it."""

    model_config = pydantic.ConfigDict(frozen=True)

    property: Property
    verdict: Verdict
    rule: str
    premises: Tuple[Premise, ...] = ()
    note: Optional[str] = None


class InconsistentReportError(AssertionError):
    """Raised when a report violates an implication between properties."""


class ClassificationReport(pydantic.BaseModel):
    """Verdicts on every property for one space."""

    model_config = pydantic.ConfigDict(frozen=True)

    space: str
    entries: Tuple[PropertyVerdict, ...]

    def get(self, prop: Property) -> PropertyVerdict:
        for entry in self.entries:
            if entry.property is prop:
                return entry
        raise KeyError(prop)

    def verdict(self, prop: Property) -> Verdict:
        return self.get(prop).verdict

    def verdicts(self) -> Dict[Property, Verdict]:
        return {entry.property: entry.verdict for entry in self.entries}

    def check_consistency(self) -> None:
        """Raise unless every implication and exclusion between properties is respected.

        Raises:
            InconsistentReportError: If some premise holds while its consequence fails.
        """
        verdicts = self.verdicts()
        for premise, conclusion in IMPLICATIONS:
            if verdicts.get(premise) is Verdict.HOLDS and verdicts.get(conclusion) is Verdict.FAILS:
                raise InconsistentReportError(f"{premise.value} holds but {conclusion.value} fails")
        for premise, excluded in EXCLUSIONS:
            if verdicts.get(premise) is Verdict.HOLDS and verdicts.get(excluded) is Verdict.HOLDS:
                raise InconsistentReportError(f"{premise.value} holds together with {excluded.value}")
        for entry in self.entries:
            if entry.verdict.decided and any(p.verdict is Verdict.UNKNOWN for p in entry.premises):
                raise InconsistentReportError(f"{entry.property.value} is decided from an unknown premise")


def _entry(
    prop: Property,
    verdict: Verdict,
    rule: str,
    premises: Iterable[Premise] = (),
    note: Optional[str] = None,
) -> PropertyVerdict:
    premises = tuple(premises)
    if any(premise.verdict is Verdict.UNKNOWN for premise in premises):
        verdict = Verdict.UNKNOWN
    return PropertyVerdict(property=prop, verdict=verdict, rule=rule, premises=premises, note=note)


def _require_lambda(spec: SpaceSpec, operation: str) -> None:
    if spec.side is not Side.LAMBDA:
        raise UnsupportedSpaceError(f"{operation} has rules for Λ-side spaces only")


def weight_regular(w: Weight) -> Verdict:
    """Whether sup W(t)/(t·w(t)) over the domain is finite."""
    return w.is_regular()


def _limit_premise(spec: SpaceSpec) -> Premise:
    return Premise(condition="lim t/W(t) = 0 as t → 0⁺", verdict=Verdict.of(spec.weight.limit_t_over_w == 0))


def _delta2_premise(spec: SpaceSpec) -> Premise:
    if spec.is_sequence:
        name = "φ satisfies Δ₂ near zero"
    elif math.isfinite(spec.gamma):
        name = "φ satisfies Δ₂ at infinity"
    else:
        name = "φ satisfies Δ₂"
    return Premise(condition=name, verdict=spec.appropriate_delta2())


def _n_at_infinity_premise(spec: SpaceSpec) -> Premise:
    return Premise(condition="φ is an N-function at infinity", verdict=spec.growth.n_at_infinity)


def _nondegenerate_premise(spec: SpaceSpec) -> Premise:
    return Premise(condition="φ is nondegenerate (a_φ = 0)", verdict=Verdict.of(spec.phi.is_nondegenerate))


def _linear_premise(spec: SpaceSpec) -> Premise:
    return Premise(condition="φ is linear", verdict=Verdict.of(spec.phi.is_linear))


def _is_constant(w: Weight) -> bool:
    return isinstance(w, ConstantWeight) or (isinstance(w, PowerDecayWeight) and w.alpha == 0)


def classify_rnp(spec: SpaceSpec) -> PropertyVerdict:
    """Radon–Nikodým property of Λ_{φ,w} or λ_{φ,w}.

    Raises:
        UnsupportedSpaceError: For M-side specs.
    """
    _require_lambda(spec, "classify_rnp")
    delta2 = _delta2_premise(spec)
    if spec.is_sequence:
        return _entry(Property.RNP, delta2.verdict, "λ_{φ,w} has the RNP iff φ satisfies Δ₂ near zero", [delta2])
    limit = _limit_premise(spec)
    if spec.phi.is_linear:
        return _entry(Property.RNP, limit.verdict, "Λ_{1,w} has the RNP iff lim t/W(t) = 0 as t → 0⁺", [limit])
    n_at_infinity = _n_at_infinity_premise(spec)
    verdict = all_of((any_of((n_at_infinity.verdict, limit.verdict)), delta2.verdict))
    return _entry(
        Property.RNP,
        verdict,
        "Λ_{φ,w} has the RNP iff (φ is an N-function at infinity or lim t/W(t) = 0) and φ satisfies the "
        "appropriate Δ₂ condition",
        [n_at_infinity, limit, delta2],
    )


def classify_d2p_bundle(spec: SpaceSpec) -> List[PropertyVerdict]:
    """SD2P, D2P, LD2P of the space and the octahedrality of the dual of its order-continuous part."""
    _require_lambda(spec, "classify_d2p_bundle")
    bundle = DIAMETER_TWO_PROPERTIES + DUAL_PROPERTIES
    nondegenerate = _nondegenerate_premise(spec)
    delta2 = _delta2_premise(spec)
    n_at_infinity = _n_at_infinity_premise(spec)
    rnp = classify_rnp(spec)

    if rnp.verdict is Verdict.HOLDS:
        rule = "spaces with the RNP have slices of the unit ball of arbitrarily small diameter"
        premises = [Premise(condition="the space has the RNP", verdict=Verdict.HOLDS)]
        return [_entry(prop, Verdict.FAILS, rule, premises) for prop in bundle]

    if nondegenerate.verdict is Verdict.HOLDS and delta2.verdict is Verdict.FAILS:
        if n_at_infinity.verdict is Verdict.HOLDS:
            note = "characterization: each property is equivalent to the failure of the relevant Δ₂ condition"
        else:
            note = "sufficient direction only; the converse is unknown when φ is not an N-function at infinity"
        own = "failure of the relevant Δ₂ condition gives the SD2P of Λ_{φ,w} and of its order-continuous subspace"
        dual = (
            "the dual of the order-continuous subspace is M⁰_{φ*,w}; the SD2P of a space is equivalent to the "
            "octahedrality of its dual"
        )
        premises = [nondegenerate, delta2]
        return [_entry(prop, Verdict.HOLDS, own, premises, note) for prop in DIAMETER_TWO_PROPERTIES] + [
            _entry(prop, Verdict.HOLDS, dual, premises, note) for prop in DUAL_PROPERTIES
        ]

    if nondegenerate.verdict is Verdict.FAILS:
        note = "the rules cover nondegenerate φ only"
    elif delta2.verdict is Verdict.UNKNOWN:
        note = "the appropriate Δ₂ condition could not be decided"
    else:
        note = "the equivalence with Δ₂ needs a nondegenerate N-function at infinity"
    return [_entry(prop, Verdict.UNKNOWN, NO_RULE, note=note) for prop in bundle]


def classify_daugavet(spec: SpaceSpec) -> List[PropertyVerdict]:
    """Daugavet property, DD2P, DLD2P, and isometry with L₁."""
    _require_lambda(spec, "classify_daugavet")
    linear = _linear_premise(spec)
    constant = Premise(condition="w is constant", verdict=Verdict.of(_is_constant(spec.weight)))

    if spec.is_sequence:
        if constant.verdict is Verdict.HOLDS:
            rule = "Orlicz sequence spaces have neither the Daugavet property nor the DD2P nor the DLD2P"
            return [_entry(prop, Verdict.FAILS, rule, [constant]) for prop in DIAMETRAL_PROPERTIES] + [
                _entry(Property.ISOMETRICALLY_L1, Verdict.UNKNOWN, NO_RULE)
            ]
        return [_entry(prop, Verdict.UNKNOWN, NO_RULE) for prop in DIAMETRAL_PROPERTIES + (Property.ISOMETRICALLY_L1,)]

    if linear.verdict is Verdict.FAILS:
        rule = "if Λ_{φ,w} has the DLD2P, the DD2P or the Daugavet property then φ is linear"
        return [_entry(prop, Verdict.FAILS, rule, [linear]) for prop in DIAMETRAL_PROPERTIES] + [
            _entry(
                Property.ISOMETRICALLY_L1,
                Verdict.FAILS,
                "L₁ on an interval has the Daugavet property, which Λ_{φ,w} lacks for nonlinear φ",
                [linear],
            )
        ]

    limit = _limit_premise(spec)
    if limit.verdict is Verdict.HOLDS:
        rule = "linear φ with lim t/W(t) = 0: Λ_{1,w} has the RNP and so no slice of diameter two"
        premises = [linear, limit]
        return [_entry(prop, Verdict.FAILS, rule, premises) for prop in DIAMETRAL_PROPERTIES] + [
            _entry(
                Property.ISOMETRICALLY_L1,
                Verdict.FAILS,
                "L₁ on an interval lacks the RNP while Λ_{1,w} has it",
                premises,
            )
        ]

    if constant.verdict is Verdict.HOLDS:
        scale = spec.phi.slope_at_zero * spec.weight.initial_value
        rule = "with w constant Λ_{φ,w} is the Orlicz space L_φ, which has these properties iff φ is linear"
        premises = [linear, constant]
        note = f"‖f‖ = {scale:g}·‖f‖₁; if W(1) = 1 and φ(u) = u the norms are equal"
        return [_entry(prop, Verdict.HOLDS, rule, premises) for prop in DIAMETRAL_PROPERTIES] + [
            _entry(Property.ISOMETRICALLY_L1, Verdict.HOLDS, "Λ_{1,c} is L₁ with a scaled norm", premises, note)
        ]

    regular = Premise(condition="w is regular", verdict=weight_regular(spec.weight))
    premises = [linear, limit, regular]
    if regular.verdict is Verdict.HOLDS:
        note = "if Λ_{1,w} has the Daugavet property it is isometrically isomorphic to L₁ (w regular)"
    else:
        note = OPEN_DAUGAVET_QUESTION
    return [_entry(prop, Verdict.UNKNOWN, NO_RULE, premises, note) for prop in DIAMETRAL_PROPERTIES] + [
        _entry(Property.ISOMETRICALLY_L1, Verdict.UNKNOWN, NO_RULE, premises, note)
    ]


def classify_m_ideal(spec: SpaceSpec) -> PropertyVerdict:
    """Whether the order-continuous subspace is an M-ideal."""
    _require_lambda(spec, "classify_m_ideal")
    nondegenerate = _nondegenerate_premise(spec)
    if nondegenerate.verdict is Verdict.HOLDS:
        return _entry(
            Property.OC_SUBSPACE_M_IDEAL,
            Verdict.HOLDS,
            "for nondegenerate φ the order-continuous subspace is an M-ideal",
            [nondegenerate],
        )
    return _entry(
        Property.OC_SUBSPACE_M_IDEAL, Verdict.UNKNOWN, NO_RULE, [nondegenerate], "only nondegenerate φ is covered"
    )


def classify_kothe_dual(spec: SpaceSpec) -> List[PropertyVerdict]:
    """Diameter two properties of M⁰_{φ,w}, the dual of the order-continuous part of Λ_{φ*,w}."""
    if spec.side is not Side.M:
        raise UnsupportedSpaceError("classify_kothe_dual has rules for M-side spaces only")
    properties = DIAMETER_TWO_PROPERTIES + DIAMETRAL_PROPERTIES
    if spec.kind is Kind.FUNCTION and spec.phi.is_finite:
        n_at_infinity = _n_at_infinity_premise(spec)
        if n_at_infinity.verdict is not Verdict.FAILS:
            rule = "M⁰_{φ,w} with φ a finite N-function at infinity has no LD2P"
            return [_entry(prop, Verdict.FAILS, rule, [n_at_infinity]) for prop in properties]
    return [_entry(prop, Verdict.UNKNOWN, NO_RULE) for prop in properties]


def _close(entries: Dict[Property, PropertyVerdict], on_interval: bool) -> None:
    changed = True
    while changed:
        changed = False
        for premise, conclusion in IMPLICATIONS:
            source, target = entries.get(premise), entries.get(conclusion)
            if source is None or target is None:
                continue
            if source.verdict is Verdict.HOLDS and target.verdict is Verdict.UNKNOWN:
                entries[conclusion] = _entry(
                    conclusion,
                    Verdict.HOLDS,
                    f"implied by {premise.value}",
                    [Premise(condition=premise.value, verdict=Verdict.HOLDS)],
                )
                changed = True
            elif target.verdict is Verdict.FAILS and source.verdict is Verdict.UNKNOWN:
                entries[premise] = _entry(
                    premise,
                    Verdict.FAILS,
                    f"{premise.value} implies {conclusion.value}, which fails",
                    [Premise(condition=conclusion.value, verdict=Verdict.FAILS)],
                )
                changed = True
        for premise, excluded in EXCLUSIONS:
            source, target = entries.get(premise), entries.get(excluded)
            if source is None or target is None:
                continue
            if source.verdict is Verdict.HOLDS and target.verdict is Verdict.UNKNOWN:
                entries[excluded] = _entry(
                    excluded,
                    Verdict.FAILS,
                    f"{premise.value} excludes {excluded.value}",
                    [Premise(condition=premise.value, verdict=Verdict.HOLDS)],
                )
                changed = True
        if on_interval:
            isometric, daugavet = entries[Property.ISOMETRICALLY_L1], entries[Property.DAUGAVET]
            if daugavet.verdict is Verdict.FAILS and isometric.verdict is Verdict.UNKNOWN:
                entries[Property.ISOMETRICALLY_L1] = _entry(
                    Property.ISOMETRICALLY_L1,
                    Verdict.FAILS,
                    "L₁ on an interval has the Daugavet property",
                    [Premise(condition=Property.DAUGAVET.value, verdict=Verdict.FAILS)],
                )
                changed = True


def classify(spec: SpaceSpec) -> ClassificationReport:
    """Run every applicable rule, close the result under the implications and check it.

    Returns:
        ClassificationReport: One entry per property, unknown where no rule applies.
    """
    entries: Dict[Property, PropertyVerdict] = {prop: _entry(prop, Verdict.UNKNOWN, NO_RULE) for prop in Property}
    if spec.side is Side.LAMBDA:
        derived = [classify_rnp(spec), *classify_d2p_bundle(spec), *classify_daugavet(spec), classify_m_ideal(spec)]
    else:
        derived = classify_kothe_dual(spec)
    for entry in derived:
        entries[entry.property] = entry
    _close(entries, on_interval=spec.kind is Kind.FUNCTION)
    report = ClassificationReport(space=spec.describe(), entries=tuple(entries[prop] for prop in Property))
    report.check_consistency()
    logger.debug("Classified %s", report.space)
    return report

from datetime import datetime, timezone

import pytest

from editguard.core import (
    FEATURE_NAMES,
    EditDecision,
    EditPair,
    FeatureVector,
    Label,
    LabeledExample,
    OtherSubtag,
    ParsedBody,
    Reason,
    RejectionReason,
    sort_reasons,
)

# Golden canonical ordering; persistence and rankings depend on it staying put.
CANONICAL_FEATURE_ORDER = (
    "text_format",
    "code_format",
    "text_modification",
    "code_modification",
    "deface_post",
    "complete_change",
    "status",
    "gratitude",
    "greetings",
    "reference_modification",
    "inactive_hyperlink",
    "signature",
    "deprecation_note",
    "duplication_note",
    "reputation",
)

TS = datetime(2020, 5, 4, 12, 0, 0, tzinfo=timezone.utc)


def test_feature_order_is_pinned():
    assert FEATURE_NAMES == CANONICAL_FEATURE_ORDER
    assert len(FEATURE_NAMES) == 15


def test_taxonomy_has_nineteen_variants():
    assert len(RejectionReason) == 19


def test_machine_identifiable_subset():
    identifiable = {r for r in RejectionReason if r.machine_identifiable}
    assert identifiable == {
        RejectionReason.UNDESIRED_TEXT_FORMATTING,
        RejectionReason.UNDESIRED_CODE_FORMATTING,
        RejectionReason.UNDESIRED_TEXT_ADD_REMOVE,
        RejectionReason.UNDESIRED_CODE_ADD_REMOVE,
        RejectionReason.STATUS_UPDATE,
        RejectionReason.GRATITUDE_ADD_REMOVE,
        RejectionReason.GREETINGS_ADD_REMOVE,
        RejectionReason.UNDESIRED_REFERENCE_MODIFICATION,
        RejectionReason.SIGNATURE_ADD_REMOVE,
        RejectionReason.DEPRECATION_NOTE_ADD_REMOVE,
        RejectionReason.DUPLICATION_NOTE_ADD_REMOVE,
        RejectionReason.COMMUNITY_TRUST,
        RejectionReason.OTHER,
    }


def test_reason_subtag_only_with_other():
    Reason(RejectionReason.OTHER, OtherSubtag.SPAM)
    with pytest.raises(ValueError):
        Reason(RejectionReason.GRATITUDE_ADD_REMOVE, OtherSubtag.SPAM)


def test_reason_wire_tags_round_trip():
    for tag in RejectionReason:
        r = Reason(tag)
        assert Reason.from_wire_tag(r.wire_tag) == r
    for sub in OtherSubtag:
        r = Reason(RejectionReason.OTHER, sub)
        assert Reason.from_wire_tag(r.wire_tag) == r
    with pytest.raises(ValueError):
        Reason.from_wire_tag("nonsense_tag")


def test_sort_reasons_canonical_and_deduped():
    reasons = [
        Reason(RejectionReason.COMMUNITY_TRUST),
        Reason(RejectionReason.OTHER, OtherSubtag.COMPLETE_CHANGE),
        Reason(RejectionReason.UNDESIRED_TEXT_FORMATTING),
        Reason(RejectionReason.OTHER, OtherSubtag.DEFACE_POST),
        Reason(RejectionReason.UNDESIRED_TEXT_FORMATTING),
    ]
    ordered = sort_reasons(reasons)
    assert ordered == [
        Reason(RejectionReason.UNDESIRED_TEXT_FORMATTING),
        Reason(RejectionReason.COMMUNITY_TRUST),
        Reason(RejectionReason.OTHER, OtherSubtag.DEFACE_POST),
        Reason(RejectionReason.OTHER, OtherSubtag.COMPLETE_CHANGE),
    ]


def _pair(**kw) -> EditPair:
    defaults = dict(
        id="p1",
        timestamp=TS,
        body_before_html="<p>a</p>",
        body_after_html="<p>b</p>",
        editor_name="Kim Roe",
        other_party_name="Lou Webb",
        editor_reputation=321,
    )
    defaults.update(kw)
    return EditPair(**defaults)


def test_edit_pair_round_trip():
    pair = _pair()
    assert EditPair.from_dict(pair.to_dict()) == pair
    bare = _pair(other_party_name=None)
    assert EditPair.from_dict(bare.to_dict()) == bare


def test_edit_pair_rejects_two_empty_bodies():
    with pytest.raises(ValueError):
        _pair(body_before_html="", body_after_html="")


def test_parsed_body_round_trip():
    body = ParsedBody(
        text_with_tags="<p>x</p>",
        text_plain="x",
        code_with_tags="<code>y</code>",
        code_plain="y",
        hyperlinks=("http://a", "http://a"),
        diff_added_text="x",
    )
    assert ParsedBody.from_dict(body.to_dict()) == body


def test_feature_vector_round_trip_and_encoding():
    fv = FeatureVector(
        text_format=True,
        text_modification=0.25,
        gratitude=True,
        reputation=77,
    )
    assert FeatureVector.from_dict(fv.to_dict()) == fv
    floats = fv.as_floats()
    assert len(floats) == 15
    assert floats[FEATURE_NAMES.index("text_format")] == 1.0
    assert floats[FEATURE_NAMES.index("text_modification")] == 0.25
    assert floats[FEATURE_NAMES.index("reputation")] == 77.0


def test_feature_vector_validation():
    with pytest.raises(ValueError):
        FeatureVector(text_modification=-0.1)
    with pytest.raises(ValueError):
        FeatureVector(reputation=-1)


def test_labeled_example_round_trip():
    ex = LabeledExample(
        features=FeatureVector(gratitude=True, reputation=10),
        label=Label.REJECTED,
        reasons=frozenset({Reason(RejectionReason.GRATITUDE_ADD_REMOVE)}),
        timestamp=TS,
    )
    assert LabeledExample.from_dict(ex.to_dict()) == ex


def test_labeled_example_accepted_has_no_reasons():
    with pytest.raises(ValueError):
        LabeledExample(
            features=FeatureVector(),
            label=Label.ACCEPTED,
            reasons=frozenset({Reason(RejectionReason.GRATITUDE_ADD_REMOVE)}),
            timestamp=TS,
        )


def test_edit_decision_round_trip():
    decision = EditDecision(
        decision=Label.REJECTED,
        score=0.87,
        reasons=(Reason(RejectionReason.GRATITUDE_ADD_REMOVE),),
        feature_vector=FeatureVector(gratitude=True, reputation=3),
    )
    assert EditDecision.from_dict(decision.to_dict()) == decision


def test_edit_decision_validation():
    with pytest.raises(ValueError):
        EditDecision(decision=Label.REJECTED, score=1.5)
    with pytest.raises(ValueError):
        EditDecision(
            decision=Label.ACCEPTED,
            score=0.2,
            reasons=(Reason(RejectionReason.GRATITUDE_ADD_REMOVE),),
        )

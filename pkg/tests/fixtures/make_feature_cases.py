#!/usr/bin/env python3
"""Regenerate feature_cases.json.

Expected vectors are hand-specified flag by flag; the two modification
scores are computed here with a standalone textbook edit-distance DP (kept
independent of the library on purpose) applied to the hand-derived plain
channels written next to each case.

Run from the repository root:  python3 tests/fixtures/make_feature_cases.py
"""

import json
from pathlib import Path


def dp_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        prev = cur
    return prev[-1]


def mod(before_plain: str, after_plain: str) -> float:
    if not before_plain or not after_plain:
        return 0.0
    d = dp_distance(before_plain, after_plain)
    return d / len(before_plain) if d else 0.0


FALSE_VECTOR = {
    "text_format": False,
    "code_format": False,
    "text_modification": 0.0,
    "code_modification": 0.0,
    "deface_post": False,
    "complete_change": False,
    "status": False,
    "gratitude": False,
    "greetings": False,
    "reference_modification": False,
    "inactive_hyperlink": False,
    "signature": False,
    "deprecation_note": False,
    "duplication_note": False,
    "reputation": 0,
}


def case(name, before, after, editor="Ann Example", other=None, rep=50,
         text_before_plain="", text_after_plain="",
         code_before_plain="", code_after_plain="", **flags):
    expected = dict(FALSE_VECTOR)
    expected["reputation"] = rep
    expected["text_modification"] = mod(text_before_plain, text_after_plain)
    expected["code_modification"] = mod(code_before_plain, code_after_plain)
    expected.update(flags)
    return {
        "name": name,
        "before": before,
        "after": after,
        "editor_name": editor,
        "other_party_name": other,
        "reputation": rep,
        "expected": expected,
    }


CASES = [
    case(
        "bold_removal",
        "<p>I am using <b>C#</b> programming language</p>",
        "<p>I am using C# programming language</p>",
        text_before_plain="i am using c# programming language",
        text_after_plain="i am using c# programming language",
        text_format=True,
    ),
    case(
        "identical_bodies",
        "<p>No change here</p>", "<p>No change here</p>", rep=7,
        text_before_plain="no change here", text_after_plain="no change here",
    ),
    case(
        "gratitude_add",
        "<p>q</p>", "<p>q</p><p>thanks!</p>", rep=120,
        text_before_plain="q", text_after_plain="q thanks!",
        gratitude=True,
    ),
    case(
        "gratitude_remove",
        "<p>q</p><p>thanks!</p>", "<p>q</p>", rep=340,
        text_before_plain="q thanks!", text_after_plain="q",
        gratitude=True,
    ),
    case(
        "greetings_add",
        "<p>my code fails</p>", "<p>hello, my code fails</p>", rep=80,
        text_before_plain="my code fails", text_after_plain="hello, my code fails",
        greetings=True,
    ),
    case(
        "status_add",
        "<p>see solution</p>", "<p>see solution</p><p>update: works now</p>", rep=150,
        text_before_plain="see solution",
        text_after_plain="see solution update: works now",
        status=True,
    ),
    case(
        "status_remove_ps",
        "<p>q</p><p>ps check logs</p>", "<p>q</p>", rep=93,
        text_before_plain="q ps check logs", text_after_plain="q",
        status=True,
    ),
    case(
        "signature_add",
        "<p>fix applied</p>", "<p>fix applied</p><p>maria jones</p>",
        editor="Maria Jones", rep=95,
        text_before_plain="fix applied", text_after_plain="fix applied maria jones",
        signature=True,
    ),
    case(
        "signature_other_party_removed",
        "<p>answer by lee wong</p>", "<p>answer</p>",
        editor="Sam Short", other="Lee Wong", rep=88,
        text_before_plain="answer by lee wong", text_after_plain="answer",
        signature=True,
    ),
    case(
        "deprecation_add",
        "<p>try this approach</p>",
        "<p>try this approach</p><p>beware of old code here</p>", rep=500,
        text_before_plain="try this approach",
        text_after_plain="try this approach beware of old code here",
        deprecation_note=True,
    ),
    case(
        "duplication_add",
        "<p>same issue again</p>", "<p>same issue again</p><p>likely duplicate</p>",
        rep=70,
        text_before_plain="same issue again",
        text_after_plain="same issue again likely duplicate",
        duplication_note=True,
    ),
    case(
        "deface_text_removed",
        '<p>bad content</p><pre><code>keep();</code></pre>',
        "<pre><code>keep();</code></pre>", rep=45,
        text_before_plain="bad content", text_after_plain="",
        code_before_plain="keep();", code_after_plain="keep();",
        deface_post=True,
    ),
    case(
        "deface_code_added",
        "<p>explain</p>", "<p>explain</p><pre><code>x=1</code></pre>", rep=61,
        text_before_plain="explain", text_after_plain="explain",
        code_before_plain="", code_after_plain="x=1",
        deface_post=True,
    ),
    case(
        "complete_change_text",
        "<p>deadbeef</p>", "<p>cncncncncn</p>", rep=60,
        text_before_plain="deadbeef", text_after_plain="cncncncncn",
        complete_change=True,
    ),
    case(
        "complete_change_code",
        "<p>demo</p><pre><code>aaaa</code></pre>",
        "<p>demo</p><pre><code>zzzzzz</code></pre>", rep=305,
        text_before_plain="demo", text_after_plain="demo",
        code_before_plain="aaaa", code_after_plain="zzzzzz",
        complete_change=True,
    ),
    case(
        "code_format_case",
        "<pre><code>SELECT * FROM t;</code></pre>",
        "<pre><code>select * from t;</code></pre>", rep=210,
        code_before_plain="select * from t;", code_after_plain="select * from t;",
        code_format=True,
    ),
    case(
        "code_format_newline_removed",
        "<pre><code>a=1;\nb=2;</code></pre>", "<pre><code>a=1;b=2;</code></pre>",
        rep=180,
        code_before_plain="a=1;b=2;", code_after_plain="a=1;b=2;",
        code_format=True,
    ),
    case(
        "reference_link_markup_removed",
        '<p>see <a href="http://x.example/a">ref</a></p>', "<p>see ref</p>", rep=77,
        text_before_plain="see ref", text_after_plain="see ref",
        text_format=True, reference_modification=True,
    ),
    case(
        "reference_changed_with_text",
        '<p>see <a href="http://x.example/a">one</a></p>',
        '<p>see <a href="http://y.example/b">two</a></p>', rep=130,
        text_before_plain="see one", text_after_plain="see two",
        reference_modification=True,
    ),
    case(
        "link_unchanged_policy_disabled",
        '<p>go to <a href="http://dead.invalid/x">page</a></p>',
        '<p>go to <a href="http://dead.invalid/x">page</a> soon</p>', rep=42,
        text_before_plain="go to page", text_after_plain="go to page soon",
    ),
    case(
        "multi_greeting_gratitude",
        "<p>code breaks</p>", "<p>hi, code breaks</p><p>thanks!</p>", rep=105,
        text_before_plain="code breaks", text_after_plain="hi, code breaks thanks!",
        greetings=True, gratitude=True,
    ),
    case(
        "reputation_only",
        "<p>stable text</p>", "<p>stable text</p>", rep=3333,
        text_before_plain="stable text", text_after_plain="stable text",
    ),
    case(
        "empty_before_body",
        "", "<p>new</p>", rep=10,
        text_before_plain="", text_after_plain="new",
        deface_post=True,
    ),
    case(
        "keyword_on_both_sides",
        "<p>thanks for nothing old man</p>", "<p>thanks for nothing old men</p>",
        rep=1200,
        text_before_plain="thanks for nothing old man",
        text_after_plain="thanks for nothing old men",
    ),
    case(
        "ps_not_inside_maps",
        "<p>see maps here</p>", "<p>see maps there</p>", rep=900,
        text_before_plain="see maps here", text_after_plain="see maps there",
    ),
    case(
        "inline_code_is_text_format",
        "<p>use the foo method</p>", "<p>use the <code>foo</code> method</p>",
        rep=650,
        text_before_plain="use the foo method", text_after_plain="use the foo method",
        text_format=True,
    ),
]


def main() -> None:
    out = Path(__file__).with_name("feature_cases.json")
    out.write_text(json.dumps(CASES, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(CASES)} cases to {out}")


if __name__ == "__main__":
    main()

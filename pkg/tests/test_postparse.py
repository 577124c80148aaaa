import json
import re

from hypothesis import given
from hypothesis import strategies as st

from editguard.postparse import extract_diff_spans, normalize_text, parse_post


def test_parse_post_inline_markup():
    parsed = parse_post("<p>I am using <b>C#</b> programming language</p>")
    assert parsed.text_with_tags == "<p>I am using <b>C#</b> programming language</p>"
    assert parsed.text_plain == "I am using C# programming language"
    assert parsed.code_plain == ""


def test_parse_post_empty_input():
    parsed = parse_post("")
    assert parsed.text_plain == ""
    assert parsed.text_with_tags == ""
    assert parsed.code_plain == ""
    assert parsed.hyperlinks == ()


def test_parse_post_code_block_and_link():
    parsed = parse_post(
        '<pre><code>x = 1</code></pre><p>see <a href="http://a.example">doc</a></p>'
    )
    assert parsed.code_plain == "x = 1"
    assert parsed.text_plain == "see doc"
    assert parsed.hyperlinks == ("http://a.example",)


def test_parse_post_multiple_code_blocks_joined_by_newline():
    parsed = parse_post(
        "<pre><code>a</code></pre><p>mid</p><pre><code>b</code></pre>"
    )
    assert parsed.code_plain == "a\nb"
    assert parsed.code_with_tags == "<code>a</code>\n<code>b</code>"
    assert parsed.text_plain == "mid"


def test_parse_post_inline_code_stays_in_text_channel():
    parsed = parse_post("<p>use <code>foo</code> here</p>")
    assert parsed.code_plain == ""
    assert parsed.text_plain == "use foo here"
    assert "<code>foo</code>" in parsed.text_with_tags


def test_parse_post_hyperlinks_keep_order_and_duplicates():
    parsed = parse_post(
        '<p><a href="http://b">x</a><a href="http://a">y</a><a href="http://b">z</a></p>'
    )
    assert parsed.hyperlinks == ("http://b", "http://a", "http://b")


def test_parse_post_tolerates_malformed_markup():
    parsed = parse_post("<p>open <b>bold <i>deep</p><unknowntag>inside")
    assert "open" in parsed.text_plain
    assert "inside" in parsed.text_plain


def test_parse_post_entities():
    parsed = parse_post("<p>a &lt; b &amp; c &#39;q&#39; &nbsp;</p>")
    assert parsed.text_plain == "a < b & c 'q' &nbsp;"


def test_parse_post_paragraph_boundaries_do_not_fuse_words():
    parsed = parse_post("<p>hello</p><p>world</p>")
    assert parsed.text_plain == "hello world"


def test_parse_post_no_residual_tags_in_plain_text(feature_cases, corpus_path):
    residual = re.compile(r"<[A-Za-z]")
    bodies = []
    for case in feature_cases:
        bodies += [case["before"], case["after"]]
    for line in corpus_path.read_text().splitlines():
        row = json.loads(line)
        bodies += [row["body_before_html"], row["body_after_html"]]
    for body in bodies:
        parsed = parse_post(body)
        assert not residual.search(parsed.text_plain), body
        assert not residual.search(parsed.code_plain), body


def test_parse_post_mixed_pre_content_keeps_text():
    parsed = parse_post("<pre>intro<code>x = 1</code></pre>")
    assert parsed.code_plain == "x = 1"
    assert "intro" in parsed.text_plain


def test_extract_diff_spans_text_add():
    assert extract_diff_spans('<p><span class="diff-add">thanks</span></p>') == (
        "thanks", "", "", "",
    )


def test_extract_diff_spans_no_diff_classes():
    assert extract_diff_spans("<p>plain body</p>") == ("", "", "", "")


def test_extract_diff_spans_code_delete():
    html = '<pre><code><span class="diff-delete">int x;</span></code></pre>'
    assert extract_diff_spans(html) == ("", "", "", "int x;")


def test_extract_diff_spans_mixed_routing():
    html = (
        '<p><span class="diff-add">new words</span>'
        '<span class="diff-delete">gone</span></p>'
        '<pre><code><span class="diff-add">x = 2</span></code></pre>'
    )
    assert extract_diff_spans(html) == ("new words", "gone", "x = 2", "")


def test_extract_diff_spans_char_count_conservation():
    spans = [("diff-add", "alpha"), ("diff-delete", "beta"), ("diff-add", "gamma!")]
    html = "<p>" + "".join(
        f'<span class="{cls}">{text}</span>' for cls, text in spans
    ) + "</p>"
    added, removed, added_code, removed_code = extract_diff_spans(html)
    total = len(added) + len(removed) + len(added_code) + len(removed_code)
    assert total == sum(len(text) for _, text in spans)


def test_normalize_text_examples():
    assert normalize_text("  Hello\nWorld ") == "helloworld"
    assert normalize_text("") == ""
    assert normalize_text("abc") == "abc"


def test_normalize_text_preserves_internal_spaces():
    assert normalize_text("a  b") == "a  b"


@given(st.text(max_size=200))
def test_normalize_text_idempotent(s):
    once = normalize_text(s)
    assert normalize_text(once) == once

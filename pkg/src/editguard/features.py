"""Compute the 15 predictor values for one suggested edit.

Every detector works on the normalized (newline-free, lowercased) channels
produced by ``postparse``. All operations are pure except the hyperlink
checker, which may issue HTTP requests under a ``Network`` policy and caches
responses per URL for the process lifetime.
"""

from __future__ import annotations

import enum
import logging
import re
import threading
from concurrent.futures import ThreadPoolExecutor, wait
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import EditPair, FeatureVector
from .postparse import normalize_text, parse_post

log = logging.getLogger(__name__)


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character edits transforming ``a`` into ``b``."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    # Row-by-row dynamic program. The in-row dependency (insertions) is a
    # running minimum of candidate[j] - j, which vectorizes.
    xa = np.frombuffer(a.encode("utf-32-le"), dtype=np.uint32)
    xb = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32)
    if len(xa) > len(xb):
        xa, xb = xb, xa
    m = len(xa)
    offsets = np.arange(m + 1, dtype=np.int64)
    prev = offsets.copy()
    cur = np.empty(m + 1, dtype=np.int64)
    for i, ch in enumerate(xb, start=1):
        cur[0] = i
        cand = np.minimum(prev[1:] + 1, prev[:-1] + (xa != ch))
        cur[1:] = np.minimum.accumulate(
            np.minimum(cand, cur[0] + offsets[1:]) - offsets[1:]
        ) + offsets[1:]
        prev, cur = cur, prev
    return int(prev[-1])


def detect_format(
    plain_before: str, plain_after: str, tagged_before: str, tagged_after: str
) -> bool:
    """True when only the markup changed: plain channels equal and non-empty,
    tagged channels different."""
    return (
        plain_before != ""
        and plain_after != ""
        and plain_before == plain_after
        and tagged_before != tagged_after
    )


def modification_score(plain_before: str, plain_after: str) -> float:
    """Edit distance normalized by the length of the before side.

    Zero when either side is empty (that case is captured by the deface
    detector instead) or when the contents are identical.
    """
    if not plain_before or not plain_after:
        return 0.0
    dist = levenshtein(plain_before, plain_after)
    if dist == 0:
        return 0.0
    return dist / max(len(plain_before), 1)


def detect_deface(plain_before: str, plain_after: str) -> bool:
    """True when exactly one side of the channel is empty."""
    return (plain_before == "") != (plain_after == "")


def detect_complete_change(plain_before: str, plain_after: str) -> bool:
    """True when both sides are non-empty and nothing of one survives in the
    other: the edit distance equals the length of either side."""
    if not plain_before or not plain_after:
        return False
    dist = levenshtein(plain_before, plain_after)
    return dist == len(plain_before) or dist == len(plain_after)


@dataclass(frozen=True)
class KeywordList:
    """A named set of lowercase keywords; multi-word entries match as
    contiguous word sequences."""

    name: str
    words: frozenset[str]

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("keyword list must not be empty")
        for w in self.words:
            if w != w.lower() or w != w.strip():
                raise ValueError(f"keyword not normalized: {w!r}")

    @classmethod
    def of(cls, name: str, words: Iterable[str]) -> "KeywordList":
        return cls(name, frozenset(words))


STATUS_KEYWORDS = KeywordList.of("status", ["edit", "update", "note", "ps"])
GRATITUDE_KEYWORDS = KeywordList.of(
    "gratitude",
    ["welcome", "thanks", "sorry", "appreciated", "thank", "ty", "thx", "regards", "tia"],
)
GREETINGS_KEYWORDS = KeywordList.of(
    "greetings",
    ["hi", "hello", "hey", "dear", "greetings", "hai", "guys", "hii", "howdy",
     "hiya", "hay", "heya", "hola", "hihi", "salutations"],
)
DEPRECATION_KEYWORDS = KeywordList.of(
    "deprecation", ["deprecation", "deprecate", "old code"]
)
DUPLICATION_KEYWORDS = KeywordList.of("duplication", ["duplicate", "duplication"])


def _keyword_pattern(word: str) -> re.Pattern:
    # Word-boundary matching so "ps" does not fire inside "maps"; multi-word
    # keywords tolerate any whitespace run between their words.
    parts = [re.escape(p) for p in word.split()]
    return re.compile(r"\b" + r"\s+".join(parts) + r"\b", re.IGNORECASE)


_PATTERN_CACHE: dict[str, re.Pattern] = {}


def _matches(word: str, text: str) -> bool:
    pat = _PATTERN_CACHE.get(word)
    if pat is None:
        pat = _PATTERN_CACHE[word] = _keyword_pattern(word)
    return pat.search(text) is not None


def detect_keyword_toggle(plain_before: str, plain_after: str, keywords: KeywordList) -> bool:
    """True when some keyword appears on exactly one side of the edit."""
    for word in keywords.words:
        if _matches(word, plain_before) != _matches(word, plain_after):
            return True
    return False


def detect_reference_modification(
    links_before: Sequence[str], links_after: Sequence[str]
) -> bool:
    """True when any hyperlink exists on one side only (exact string compare)."""
    before, after = set(links_before), set(links_after)
    return bool(before.symmetric_difference(after))


class LinkCheckMode(enum.Enum):
    DISABLED = "disabled"
    NETWORK = "network"


@dataclass(frozen=True)
class LinkCheckPolicy:
    """How (and whether) to probe hyperlinks.

    ``timeout_seconds`` bounds each request; ``budget_seconds``, when set,
    bounds one whole batch of checks, and links still unfinished at the
    deadline count as inactive.
    """

    mode: LinkCheckMode = LinkCheckMode.DISABLED
    timeout_seconds: float = 2.0
    max_parallel: int = 4
    budget_seconds: Optional[float] = None

    @classmethod
    def disabled(cls) -> "LinkCheckPolicy":
        return cls(LinkCheckMode.DISABLED)

    @classmethod
    def network(
        cls,
        timeout_seconds: float = 2.0,
        max_parallel: int = 4,
        budget_seconds: Optional[float] = None,
    ) -> "LinkCheckPolicy":
        return cls(LinkCheckMode.NETWORK, timeout_seconds, max_parallel, budget_seconds)


class LinkChecker:
    """HTTP status prober with a process-lifetime, thread-safe URL cache.

    HEAD first, falling back to GET on 405; at most five redirect hops.
    Any status >= 400, transport error, or timeout marks the URL inactive.
    """

    def __init__(self) -> None:
        self._cache: dict[str, bool] = {}
        self._lock = threading.Lock()

    def _probe(self, url: str, timeout: float) -> bool:
        import requests

        session = requests.Session()
        session.max_redirects = 5
        try:
            resp = session.head(url, timeout=timeout, allow_redirects=True)
            if resp.status_code == 405:
                resp = session.get(url, timeout=timeout, allow_redirects=True)
            return resp.status_code >= 400
        except requests.RequestException as exc:
            log.debug("link check failed for %s: %s", url, exc)
            return True
        finally:
            session.close()

    def is_inactive(self, url: str, timeout: float) -> bool:
        with self._lock:
            if url in self._cache:
                return self._cache[url]
        inactive = self._probe(url, timeout)
        with self._lock:
            self._cache[url] = inactive
        return inactive

    def any_inactive(self, urls: Sequence[str], policy: LinkCheckPolicy) -> bool:
        if policy.mode is LinkCheckMode.DISABLED or not urls:
            return False
        unique = list(dict.fromkeys(urls))
        pool = ThreadPoolExecutor(max_workers=max(1, policy.max_parallel))
        try:
            futures = [
                pool.submit(self.is_inactive, u, policy.timeout_seconds)
                for u in unique
            ]
            done, pending = wait(futures, timeout=policy.budget_seconds)
            if pending:
                return True  # checks unfinished at the budget count as inactive
            return any(f.result() for f in done)
        finally:
            pool.shutdown(wait=False, cancel_futures=True)


_DEFAULT_CHECKER = LinkChecker()


def check_inactive_hyperlinks(
    links_after: Sequence[str],
    policy: LinkCheckPolicy,
    checker: Optional[LinkChecker] = None,
) -> bool:
    """True when any post-edit hyperlink is dead. Always false when the
    policy is Disabled."""
    return (checker or _DEFAULT_CHECKER).any_inactive(links_after, policy)


class ReputationEventKind(enum.Enum):
    QUESTION_UPVOTE = "question_upvote"
    ANSWER_UPVOTE = "answer_upvote"
    ANSWER_ACCEPTED = "answer_accepted"
    DOWNVOTE_RECEIVED = "downvote_received"
    DOWNVOTE_CAST = "downvote_cast"
    BOUNTY_WON = "bounty_won"
    EDIT_APPROVED = "edit_approved"


@dataclass(frozen=True)
class ReputationEvent:
    kind: ReputationEventKind
    at: datetime
    amount: int = 0

    def __post_init__(self) -> None:
        if self.kind is ReputationEventKind.BOUNTY_WON and self.amount <= 0:
            raise ValueError("bounty amount must be positive")


@dataclass(frozen=True)
class ScoringTable:
    """Per-event reputation deltas. The site publishes and versions these
    rules, so they are data, not code."""

    question_upvote: int = 5
    answer_upvote: int = 10
    answer_accepted: int = 15
    downvote_received: int = -2
    downvote_cast: int = -1
    edit_approved: int = 2
    base: int = 1
    floor: int = 1

    def delta(self, event: ReputationEvent) -> int:
        if event.kind is ReputationEventKind.BOUNTY_WON:
            return event.amount
        return {
            ReputationEventKind.QUESTION_UPVOTE: self.question_upvote,
            ReputationEventKind.ANSWER_UPVOTE: self.answer_upvote,
            ReputationEventKind.ANSWER_ACCEPTED: self.answer_accepted,
            ReputationEventKind.DOWNVOTE_RECEIVED: self.downvote_received,
            ReputationEventKind.DOWNVOTE_CAST: self.downvote_cast,
            ReputationEventKind.EDIT_APPROVED: self.edit_approved,
        }[event.kind]

    def to_dict(self) -> dict:
        return {
            "question_upvote": self.question_upvote,
            "answer_upvote": self.answer_upvote,
            "answer_accepted": self.answer_accepted,
            "downvote_received": self.downvote_received,
            "downvote_cast": self.downvote_cast,
            "edit_approved": self.edit_approved,
            "base": self.base,
            "floor": self.floor,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScoringTable":
        return cls(**{k: int(v) for k, v in d.items()})

    @classmethod
    def from_file(cls, path) -> "ScoringTable":
        import json
        from pathlib import Path

        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def compute_reputation(
    events: Sequence[ReputationEvent],
    as_of: datetime,
    rules: ScoringTable = ScoringTable(),
) -> int:
    """Reputation score at ``as_of``: base plus the deltas of all events up
    to that instant, floored at the configured minimum."""
    score = rules.base + sum(rules.delta(e) for e in events if e.at <= as_of)
    return max(score, rules.floor)


def signature_keywords(
    editor_name: str, other_party_name: Optional[str] = None, min_token_len: int = 3
) -> Optional[KeywordList]:
    """Keyword list built from the involved users' names: each full name plus
    its first and last parts. Tokens shorter than ``min_token_len`` are
    dropped to avoid firing on initials that collide with common words."""
    words: set[str] = set()
    for name in (editor_name, other_party_name):
        if not name:
            continue
        tokens = name.lower().split()
        if not tokens:
            continue
        candidates = [" ".join(tokens), tokens[0]]
        if len(tokens) > 1:
            candidates.append(tokens[-1])
        words.update(
            c for c in candidates
            if all(len(t) >= min_token_len for t in c.split())
        )
    if not words:
        return None
    return KeywordList.of("signature", words)


@dataclass(frozen=True)
class _Channels:
    text_plain: str
    text_tagged: str
    code_plain: str
    code_tagged: str
    hyperlinks: tuple[str, ...]


def _channels(body_html: str) -> _Channels:
    # Plain channels are normalized (newlines deleted, lowercased) so that
    # reflow- and case-only edits compare equal there; the tagged channels
    # stay raw so exactly those edits still register as formatting changes.
    parsed = parse_post(body_html)
    return _Channels(
        text_plain=normalize_text(parsed.text_plain),
        text_tagged=parsed.text_with_tags,
        code_plain=normalize_text(parsed.code_plain),
        code_tagged=parsed.code_with_tags,
        hyperlinks=parsed.hyperlinks,
    )


def extract_features(
    pair: EditPair,
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
    link_checker: Optional[LinkChecker] = None,
) -> FeatureVector:
    """Compute the full 15-value vector for one edit.

    Deterministic for a fixed link policy; every degenerate input maps to a
    defined vector.
    """
    before = _channels(pair.body_before_html)
    after = _channels(pair.body_after_html)

    sig_list = signature_keywords(pair.editor_name, pair.other_party_name)

    return FeatureVector(
        text_format=detect_format(
            before.text_plain, after.text_plain, before.text_tagged, after.text_tagged
        ),
        code_format=detect_format(
            before.code_plain, after.code_plain, before.code_tagged, after.code_tagged
        ),
        text_modification=modification_score(before.text_plain, after.text_plain),
        code_modification=modification_score(before.code_plain, after.code_plain),
        deface_post=(
            detect_deface(before.text_plain, after.text_plain)
            or detect_deface(before.code_plain, after.code_plain)
        ),
        complete_change=(
            detect_complete_change(before.text_plain, after.text_plain)
            or detect_complete_change(before.code_plain, after.code_plain)
        ),
        status=detect_keyword_toggle(before.text_plain, after.text_plain, STATUS_KEYWORDS),
        gratitude=detect_keyword_toggle(
            before.text_plain, after.text_plain, GRATITUDE_KEYWORDS
        ),
        greetings=detect_keyword_toggle(
            before.text_plain, after.text_plain, GREETINGS_KEYWORDS
        ),
        reference_modification=detect_reference_modification(
            before.hyperlinks, after.hyperlinks
        ),
        inactive_hyperlink=check_inactive_hyperlinks(
            after.hyperlinks, link_policy, link_checker
        ),
        signature=(
            detect_keyword_toggle(before.text_plain, after.text_plain, sig_list)
            if sig_list is not None
            else False
        ),
        deprecation_note=detect_keyword_toggle(
            before.text_plain, after.text_plain, DEPRECATION_KEYWORDS
        ),
        duplication_note=detect_keyword_toggle(
            before.text_plain, after.text_plain, DUPLICATION_KEYWORDS
        ),
        reputation=pair.editor_reputation,
    )

"""Rule-based lexicon sentiment scorer.

Scores a text by summing token valences from a lexicon, adjusting for
intensifiers, negation, capitalization, punctuation emphasis, and
contrastive "but" clauses, then squashing the sum into [-1, 1].

All rule constants live in this module so tests can pin them.
"""

from __future__ import annotations

import io
import math
import string
from dataclasses import dataclass

# Rule constants.  Kept in one table; changing any of these changes the
# compound scores of every text.
NORMALIZATION_ALPHA = 15.0
BOOSTER_INCREMENT = 0.293
DAMPENER_INCREMENT = -0.293
CAPS_INCREMENT = 0.733
NEGATION_FACTOR = -0.74
NEGATION_SCOPE = 3          # preceding tokens examined for a negator
BOOSTER_SCOPE = 3           # preceding tokens examined for a booster
BOOSTER_DISTANCE_SCALE = (1.0, 0.95, 0.9)
EXCLAIM_INCREMENT = 0.292
MAX_EXCLAIM = 3
QUESTION_INCREMENT = 0.18
QUESTION_CAP = 0.96
BUT_BEFORE_FACTOR = 0.5
BUT_AFTER_FACTOR = 1.5

VALENCE_MIN = -4.0
VALENCE_MAX = 4.0

BOOSTERS = {
    "absolutely": BOOSTER_INCREMENT, "amazingly": BOOSTER_INCREMENT,
    "awfully": BOOSTER_INCREMENT, "completely": BOOSTER_INCREMENT,
    "considerably": BOOSTER_INCREMENT, "decidedly": BOOSTER_INCREMENT,
    "deeply": BOOSTER_INCREMENT, "enormously": BOOSTER_INCREMENT,
    "entirely": BOOSTER_INCREMENT, "especially": BOOSTER_INCREMENT,
    "exceptionally": BOOSTER_INCREMENT, "extremely": BOOSTER_INCREMENT,
    "fabulously": BOOSTER_INCREMENT, "fully": BOOSTER_INCREMENT,
    "greatly": BOOSTER_INCREMENT, "highly": BOOSTER_INCREMENT,
    "hugely": BOOSTER_INCREMENT, "incredibly": BOOSTER_INCREMENT,
    "intensely": BOOSTER_INCREMENT, "majorly": BOOSTER_INCREMENT,
    "purely": BOOSTER_INCREMENT, "quite": BOOSTER_INCREMENT,
    "really": BOOSTER_INCREMENT, "remarkably": BOOSTER_INCREMENT,
    "so": BOOSTER_INCREMENT, "substantially": BOOSTER_INCREMENT,
    "thoroughly": BOOSTER_INCREMENT, "totally": BOOSTER_INCREMENT,
    "tremendously": BOOSTER_INCREMENT, "unbelievably": BOOSTER_INCREMENT,
    "unusually": BOOSTER_INCREMENT, "utterly": BOOSTER_INCREMENT,
    "very": BOOSTER_INCREMENT,
    "almost": DAMPENER_INCREMENT, "barely": DAMPENER_INCREMENT,
    "hardly": DAMPENER_INCREMENT, "kinda": DAMPENER_INCREMENT,
    "less": DAMPENER_INCREMENT, "little": DAMPENER_INCREMENT,
    "marginally": DAMPENER_INCREMENT, "occasionally": DAMPENER_INCREMENT,
    "partly": DAMPENER_INCREMENT, "scarcely": DAMPENER_INCREMENT,
    "slightly": DAMPENER_INCREMENT, "somewhat": DAMPENER_INCREMENT,
    "sorta": DAMPENER_INCREMENT,
}

NEGATIONS = frozenset([
    "aint", "ain't", "arent", "aren't", "cannot", "cant", "can't",
    "couldnt", "couldn't", "darent", "didnt", "didn't", "doesnt",
    "doesn't", "dont", "don't", "hadnt", "hadn't", "hasnt", "hasn't",
    "havent", "haven't", "isnt", "isn't", "mightnt", "mustnt", "neither",
    "never", "none", "nope", "nor", "not", "nothing", "nowhere",
    "shouldnt", "shouldn't", "wasnt", "wasn't", "werent", "weren't",
    "without", "wont", "won't", "wouldnt", "wouldn't", "no",
])

BUT_WORDS = frozenset(["but"])

_STRIP_CHARS = string.punctuation + "¡¿‘’“”…"


class LexiconError(ValueError):
    """Raised for malformed or invalid lexicon files."""


@dataclass(frozen=True)
class SentimentLexicon:
    """Token valences plus the compiled-in modifier word lists."""

    entries: dict[str, float]
    boosters: dict[str, float]
    negations: frozenset[str]
    but_words: frozenset[str]

    def __post_init__(self):
        for token, valence in self.entries.items():
            if not token or token != token.lower():
                raise LexiconError(f"lexicon token {token!r} must be lowercase and non-empty")
            if not VALENCE_MIN <= valence <= VALENCE_MAX:
                raise LexiconError(f"valence {valence} for {token!r} outside [{VALENCE_MIN}, {VALENCE_MAX}]")
        overlap = self.entries.keys() & self.boosters.keys()
        if overlap:
            raise LexiconError(f"tokens cannot be both entries and boosters: {sorted(overlap)}")


@dataclass(frozen=True)
class SentimentScore:
    positive: float
    negative: float
    neutral: float
    compound: float


_EMPTY_SCORE = SentimentScore(0.0, 0.0, 0.0, 0.0)


def load_lexicon(source) -> SentimentLexicon:
    """Parse a tab-separated ``token<TAB>valence`` stream into a lexicon.

    Accepts bytes, str, or a file-like object.  '#'-prefixed lines and
    blank lines are skipped; extra columns are ignored; duplicate tokens
    resolve to the last occurrence.  Tokens that collide with the
    compiled-in booster list are skipped (the modifier role wins).
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    entries: dict[str, float] = {}
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.rstrip("\n\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise LexiconError(f"line {lineno}: expected token<TAB>valence, got {line!r}")
        token = parts[0].strip().lower()
        try:
            valence = float(parts[1])
        except ValueError:
            raise LexiconError(f"line {lineno}: non-numeric valence {parts[1]!r}") from None
        if not token:
            raise LexiconError(f"line {lineno}: empty token")
        if not VALENCE_MIN <= valence <= VALENCE_MAX:
            raise LexiconError(f"line {lineno}: valence {valence} outside [{VALENCE_MIN}, {VALENCE_MAX}]")
        if token in BOOSTERS:
            continue
        entries[token] = valence
    return SentimentLexicon(entries=entries, boosters=dict(BOOSTERS),
                            negations=NEGATIONS, but_words=BUT_WORDS)


def _tokenize(text: str) -> list[str]:
    """Whitespace-split, strip edge punctuation unless the token is all punctuation."""
    tokens = []
    for raw in text.split():
        stripped = raw.strip(_STRIP_CHARS)
        tok = stripped if stripped else raw
        if tok:
            tokens.append(tok)
    return tokens


def _is_shouting(token: str) -> bool:
    return token.isupper() and any(c.isalpha() for c in token)


def normalize_valence_sum(total: float) -> float:
    """Squash an unbounded valence sum into [-1, 1]."""
    score = total / math.sqrt(total * total + NORMALIZATION_ALPHA)
    return max(-1.0, min(1.0, score))


def _punctuation_emphasis(text: str) -> float:
    ep = min(text.count("!"), MAX_EXCLAIM) * EXCLAIM_INCREMENT
    qm_count = text.count("?")
    if qm_count > 1:
        qm = qm_count * QUESTION_INCREMENT if qm_count <= 3 else QUESTION_CAP
    else:
        qm = 0.0
    return ep + qm


def score_text(lexicon: SentimentLexicon, text: str) -> SentimentScore:
    """Score one text.  Pure and total: any UTF-8 string is accepted."""
    tokens = _tokenize(text)
    if not tokens:
        return _EMPTY_SCORE
    lowered = [t.lower() for t in tokens]

    # Caps emphasis applies only when the text mixes cased styles.
    shouting = [_is_shouting(t) for t in tokens]
    cap_differential = any(shouting) and not all(shouting)

    valences = []
    for i, low in enumerate(lowered):
        if low in lexicon.boosters or low not in lexicon.entries:
            valences.append(0.0)
            continue
        v = lexicon.entries[low]
        if v == 0.0:
            # Neutral entry: nothing for boosters/caps/negation to act on.
            valences.append(0.0)
            continue
        if cap_differential and shouting[i]:
            v += CAPS_INCREMENT if v > 0 else -CAPS_INCREMENT
        for dist in range(1, BOOSTER_SCOPE + 1):
            j = i - dist
            if j < 0:
                break
            step = lexicon.boosters.get(lowered[j])
            if step is not None:
                step *= BOOSTER_DISTANCE_SCALE[dist - 1]
                v += -step if v < 0 else step
        if any(lowered[i - d] in lexicon.negations
               for d in range(1, NEGATION_SCOPE + 1) if i - d >= 0):
            v *= NEGATION_FACTOR
        valences.append(v)

    for bi, low in enumerate(lowered):
        if low in lexicon.but_words:
            valences = [v * BUT_BEFORE_FACTOR if k < bi
                        else v * BUT_AFTER_FACTOR if k > bi else v
                        for k, v in enumerate(valences)]
            break

    emphasis = _punctuation_emphasis(text)
    total = sum(valences)
    if total > 0:
        total += emphasis
    elif total < 0:
        total -= emphasis
    compound = normalize_valence_sum(total)

    pos = sum(v + 1.0 for v in valences if v > 0)
    neg = sum(v - 1.0 for v in valences if v < 0)
    neu = float(sum(1 for v in valences if v == 0))
    if pos > abs(neg):
        pos += emphasis
    elif pos < abs(neg):
        neg -= emphasis
    mass = pos + abs(neg) + neu
    if mass == 0:
        return _EMPTY_SCORE
    return SentimentScore(positive=pos / mass, negative=abs(neg) / mass,
                          neutral=neu / mass, compound=compound)


def compound_only(lexicon: SentimentLexicon, text: str) -> float:
    """Compound score alone; identical to ``score_text(...).compound``."""
    return score_text(lexicon, text).compound

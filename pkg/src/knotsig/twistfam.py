"""Twisted knot families: insert full twists into a base braid at marked
regions, compute exact signatures, and compare with the asymptotic
slope/signature predictions."""

import json
from dataclasses import dataclass

from .braid import closure_is_knot, full_twist_word, invert_word, word_strands
from .diagram import DiagramCode, gl_signature


@dataclass(frozen=True)
class TwistSpec:
    """A base braid whose closure is a knot, plus twist regions given as
    (position in word, first strand, strand count). Each region models a
    curve encircling that many coherently oriented strands, so its linking
    number with the knot equals the strand count."""

    base_braid: tuple
    regions: tuple
    strands: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_braid", tuple(self.base_braid))
        object.__setattr__(
            self, "regions", tuple(tuple(r) for r in self.regions)
        )
        k = self.strands
        if k is None:
            k = word_strands(self.base_braid)
            for _, start, count in self.regions:
                k = max(k, start + count - 1)
            object.__setattr__(self, "strands", k)
        if k < word_strands(self.base_braid):
            raise ValueError("braid word needs more than %d strands" % k)
        for pos, start, count in self.regions:
            if not 0 <= pos <= len(self.base_braid):
                raise ValueError("region position %d outside the word" % pos)
            if count < 1 or start < 1 or start + count - 1 > k:
                raise ValueError(
                    "region strands [%d, %d] not within [1, %d]"
                    % (start, start + count - 1, k)
                )
        if not closure_is_knot(self.base_braid, k):
            raise ValueError("base braid closure is not a knot")

    @property
    def linking_numbers(self):
        return tuple(count for _, _, count in self.regions)


def _twist_word(start, count, q):
    if q >= 0:
        return full_twist_word(start, count) * q
    return invert_word(full_twist_word(start, count) * -q)


def twisted_word(spec, q):
    """The braid word with q[i] full twists inserted at region i."""
    if len(q) != len(spec.regions):
        raise ValueError(
            "need %d twist counts, got %d" % (len(spec.regions), len(q))
        )
    inserts = sorted(zip(spec.regions, q), key=lambda item: item[0][0])
    word = []
    prev = 0
    for (pos, start, count), qi in inserts:
        word.extend(spec.base_braid[prev:pos])
        word.extend(_twist_word(start, count, qi))
        prev = pos
    word.extend(spec.base_braid[prev:])
    return word


def twist_insert(spec, q):
    """Diagram of the twisted closure. Full twists are pure braids, so the
    permutation test can only fail on a spec bug; it runs before the
    diagram is built because it is cheap."""
    word = twisted_word(spec, q)
    if not closure_is_knot(word, spec.strands):
        raise ValueError("twisted closure is not a knot")
    return DiagramCode.from_braid_word(word, spec.strands)


def predicted_slope(ell, q):
    """Asymptotic slope center -sum(ell[i]^2 * q[i])."""
    if len(ell) != len(q):
        raise ValueError("length mismatch: %d vs %d" % (len(ell), len(q)))
    return -sum(l * l * qi for l, qi in zip(ell, q))


def predicted_signature(ell_even, q_even, ell_odd, q_odd):
    """Asymptotic signature center: each even linking number ell
    contributes -ell^2 q / 2, each odd one -(ell^2 - 1) q / 2."""
    if len(ell_even) != len(q_even) or len(ell_odd) != len(q_odd):
        raise ValueError("length mismatch between linking numbers and twists")
    for l in ell_even:
        if l % 2:
            raise ValueError("%d listed as even" % l)
    for l in ell_odd:
        if l % 2 == 0:
            raise ValueError("%d listed as odd" % l)
    total = sum(l * l * qi for l, qi in zip(ell_even, q_even))
    total += sum((l * l - 1) * qi for l, qi in zip(ell_odd, q_odd))
    assert total % 2 == 0
    return -(total // 2)


def _split_parities(ells, q):
    evens = [(l, qi) for l, qi in zip(ells, q) if l % 2 == 0]
    odds = [(l, qi) for l, qi in zip(ells, q) if l % 2]
    return (
        [l for l, _ in evens],
        [qi for _, qi in evens],
        [l for l, _ in odds],
        [qi for _, qi in odds],
    )


@dataclass(frozen=True)
class FamilyRow:
    q: tuple
    sigma: int
    predicted: int
    residual: int


def family_report(spec, q_range):
    """One row per twist vector: exact signature, predicted center, and
    their difference. The residual column is what boundedness and
    stabilization checks consume."""
    ells = spec.linking_numbers
    rows = []
    for q in q_range:
        q = tuple(q)
        sigma = gl_signature(twist_insert(spec, q))
        predicted = predicted_signature(*_split_parities(ells, q))
        rows.append(FamilyRow(q, sigma, predicted, sigma - predicted))
    return rows


def parse_braid_text(text):
    """Comma-separated signed generator indices, e.g. '1,1,1'."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError("bad braid word %r" % text) from None


def load_spec(path):
    """Read a TwistSpec (and optional list of twist vectors) from a JSON
    file: {"base_braid": [1,1,1] or "1,1,1", "regions": [[pos,start,count]],
    "strands": optional, "q_vectors": optional}."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    word = raw["base_braid"]
    if isinstance(word, str):
        word = parse_braid_text(word)
    spec = TwistSpec(
        tuple(word),
        tuple(tuple(r) for r in raw.get("regions", ())),
        raw.get("strands"),
    )
    q_vectors = [tuple(qv) for qv in raw.get("q_vectors", [])]
    return spec, q_vectors

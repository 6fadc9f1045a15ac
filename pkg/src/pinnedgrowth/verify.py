"""Invariant suites run over the built-in corpora.

Each check yields ``Check`` records; a suite passes when every record does.
Failures carry the corpus label and seed so they can be reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import growth as G
from . import incidence as I
from .corpus import CorpusEntry, default_corpus, gaussian_corpus
from .exact import format_scalar
from .sets import affine_image, direct_product

SUITES = ("identities", "inequalities", "parity", "oracles")


@dataclass(frozen=True)
class Check:
    suite: str
    label: str
    seed: int | None
    quantity: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        seed = "" if self.seed is None else f" seed={self.seed}"
        detail = f": {self.detail}" if self.detail else ""
        return f"{status} [{self.suite}] {self.label}{seed} {self.quantity}{detail}"


def _check(suite, entry, quantity, ok, detail=""):
    return Check(suite, entry.label, entry.seed, quantity, bool(ok), "" if ok else detail)


def identity_checks(entry: CorpusEntry):
    A = entry.A
    n = len(A)
    s = "identities"
    q = G.count_Q(A)
    esum = G.shifted_energy_sum(A, A, G.SUBTRACTIVE)
    yield _check(s, entry, "q_total == shifted_energy_sum", q.q_total == esum, f"{q.q_total} != {esum}")
    yield _check(s, entry, "q_diag closed form", q.q_diag == G.QDecomposition.diag_closed_form(n),
                 f"q_diag={q.q_diag}")
    yield _check(s, entry, "partition", q.q_zero + q.q_diag + q.q_star == q.q_total, repr(q))
    add = G.shifted_energy_sum(A, A, G.ADDITIVE)
    sub_neg = G.shifted_energy_sum(A, affine_image(A, -1, 0), G.SUBTRACTIVE)
    yield _check(s, entry, "additive(A,A) == subtractive(A,-A)", add == sub_neg, f"{add} != {sub_neg}")
    if n >= 2:
        spec = G.cross_ratio_spectrum(A)
        yield _check(s, entry, "sum n(x) == |A|^3 - |A|^2", spec.total == n ** 3 - n ** 2,
                     f"total={spec.total}")
        degenerate = G.count_Q_degenerate_ac(A)
        sq = spec.sum_of_squares()
        yield _check(s, entry, "sum n(x)^2 == Q - #(a=c or a'=c')", sq == q.q_total - degenerate,
                     f"{sq} != {q.q_total} - {degenerate}")
        P = direct_product(A, A)
        lines = I.spanned_lines(P)
        pair_sum = sum(comb(m, 2) for m in lines.values())
        yield _check(s, entry, "sum C(m,2) == C(|P|,2)", pair_sum == comb(len(P), 2), str(pair_sum))


def inequality_checks(entry: CorpusEntry):
    A = entry.A
    n = len(A)
    s = "inequalities"
    if n < 2:
        return
    q = G.count_Q(A)
    for sign in G.SIGNS:
        cert = G.extract_pinned_pair(A, sign)
        yield _check(s, entry, f"CS certificate ({sign})", cert.cs_holds(),
                     f"{cert.product_set_size} < {cert.cs_lower_bound}")
        yield _check(s, entry, f"pigeonhole ({sign})", cert.pigeonhole_holds(),
                     f"{cert.energy}*{n}^2 > {cert.energy_sum}")
        X = affine_image(A, -1, cert.a) if sign == G.SUBTRACTIVE else affine_image(A, 1, cert.a)
        Y = affine_image(A, -1, cert.a_prime) if sign == G.SUBTRACTIVE else affine_image(A, 1, cert.a_prime)
        e, bound = G.mult_energy(X, Y), G.cs_bound(X, Y)
        yield _check(s, entry, f"E*(X,Y) >= |X|^2|Y|^2/|XY| ({sign})", e >= bound, f"{e} < {bound}")
    P = direct_product(A, A)
    lines = I.spanned_lines(P)
    triples = I.ordered_collinear_triples(lines)
    cubes = I.collinear_cube_sum(lines)
    yield _check(s, entry, "q_star <= ordered triples <= cube sum", q.q_star <= triples <= cubes,
                 f"{q.q_star}, {triples}, {cubes}")
    sq = G.cross_ratio_spectrum(A).sum_of_squares()
    yield _check(s, entry, "sum n(x)^2 < q_total", sq < q.q_total, f"{sq} >= {q.q_total}")
    top = max(lines.values())
    yield _check(s, entry, "max line richness <= |A|", top <= n, f"max m_l={top}")


def signature(A) -> dict:
    """Every count computed for A, keyed by name; field-independent by design."""
    out = {}
    q = G.count_Q(A)
    out["Q"] = (q.q_total, q.q_zero, q.q_diag, q.q_star)
    out["E*(A,A)"] = G.mult_energy(A, A)
    out["|A+A|"] = len(G.sumset(A, A))
    out["|AA|"] = len(G.productset(A, A))
    for sign in G.SIGNS:
        out[f"energy_sum_{sign}"] = G.shifted_energy_sum(A, A, sign)
    if len(A) >= 2:
        for sign in G.SIGNS:
            c = G.extract_pinned_pair(A, sign)
            out[f"pinned_{sign}"] = (A.elements.index(c.a), A.elements.index(c.a_prime),
                                     c.energy, c.product_set_size, c.cs_lower_bound)
        spec = G.cross_ratio_spectrum(A)
        out["cross_ratio"] = (len(spec), spec.total, spec.sum_of_squares())
        out["degenerate_ac"] = G.count_Q_degenerate_ac(A)
        P = direct_product(A, A)
        lines = I.spanned_lines(P)
        out["lines"] = lines.histogram()
        out["collinear"] = (I.ordered_collinear_triples(lines), I.collinear_cube_sum(lines))
        out["|R(P)|"] = len(I.rect_distance_set(P))
        out["|(A-A)(A-A)|"] = len(G.difference_product_set(A))
    return out


def parity_checks(entry: CorpusEntry):
    rational = signature(entry.A)
    gaussian = signature(entry.A.to_gaussian())
    for key, value in rational.items():
        other = gaussian.get(key)
        yield _check("parity", entry, key, value == other, f"rational={value} gaussian={other}")


def oracle_checks(entry: CorpusEntry):
    A = entry.A
    s = "oracles"
    fast, brute = G.count_Q(A, "fast"), G.count_Q(A, "bruteforce")
    yield _check(s, entry, "count_Q fast == bruteforce", fast == brute, f"{fast} != {brute}")
    for a in A.elements[:3]:
        X = affine_image(A, -1, a)
        e1, e2 = G.mult_energy(X, A), G.mult_energy_bruteforce(X, A)
        yield _check(s, entry, f"E*({format_scalar(a)}-A, A) fast == bruteforce", e1 == e2, f"{e1} != {e2}")
    if len(A) >= 2:
        P = direct_product(A, A)
        if len(P) <= I.DEFAULT_TRIPLE_CAP:
            t1, t2 = I.ordered_collinear_triples(P), I.ordered_collinear_triples_bruteforce(P)
            yield _check(s, entry, "collinear triples spectrum == determinant", t1 == t2, f"{t1} != {t2}")


_SUITE_CHECKS = {
    "identities": identity_checks,
    "inequalities": inequality_checks,
    "parity": parity_checks,
    "oracles": oracle_checks,
}


def suite_corpus(suite: str) -> list:
    if suite == "parity":
        return default_corpus()
    # Gaussian sets run through every non-parity suite on their own field
    return default_corpus() + gaussian_corpus()


def verify(suite: str, corpus=None) -> list:
    """Run a named suite; returns every Check (passing and failing)."""
    if suite not in _SUITE_CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    checks = []
    for entry in (suite_corpus(suite) if corpus is None else corpus):
        checks.extend(_SUITE_CHECKS[suite](entry))
    return checks

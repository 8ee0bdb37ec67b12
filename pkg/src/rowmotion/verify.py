"""End-to-end verification suites over whole posets.

Each suite sweeps every ideal of the poset in question, checks the orbit
structure and the word codecs against the direct dynamics, and returns a list
of named pass/fail results with enough detail to locate a failure.  All
comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .catalog import CatalogEntry, classical_layer_expr, entry_expr_poset
from .constructions import build, grid_poset, k_product_poset
from .homomesy import orbit_reports
from .isomorphism import are_isomorphic
from .poset import DEFAULT_CAP, IdealSet, Poset, ideal_masks, rowmotion_ideal
from .roots import layer as build_layer
from .words import (
    count_10,
    decode_grid,
    decode_K_fullrank,
    decode_K_starred,
    dual_ideal,
    encode_grid,
    encode_K_fullrank,
    encode_K_starred,
    epsilon_n,
    is_full_rank,
    long_sequences,
    psi,
    psi_bar,
    psi_iterates,
    size_profile,
    window_sizes_K,
    zigzag,
)

MAX_DETAILS = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _result(name: str, failures: list[str], note: str = "") -> CheckResult:
    if not failures:
        return CheckResult(name, True, note or "ok")
    shown = "; ".join(failures[:MAX_DETAILS])
    if len(failures) > MAX_DETAILS:
        shown += f"; and {len(failures) - MAX_DETAILS} more"
    return CheckResult(name, False, shown)


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def check_constant_average(
    poset: Poset,
    expected: Fraction,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
    label: str = "orbit averages constant",
):
    reports = orbit_reports(poset, cap, threads)
    failures = [
        f"orbit {k} (length {r.length}) averages {_fraction_str(r.average_size)}"
        for k, r in enumerate(reports)
        if r.average_size != expected
    ]
    note = f"{len(reports)} orbits, every average {_fraction_str(expected)}"
    return _result(label, failures, note), reports


def verify_grid(
    m: int,
    n: int,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> tuple[Poset, list, list[CheckResult]]:
    poset = grid_poset(m, n)
    period = m + n
    checks: list[CheckResult] = []

    avg_check, reports = check_constant_average(
        poset, Fraction(m * n, m + n), cap, threads,
        "orbit averages equal mn/(m+n)",
    )
    checks.append(avg_check)

    order = lcm(*(r.length for r in reports)) if reports else 1
    checks.append(
        CheckResult(
            "operator order is m+n",
            order == period,
            f"order {order}, expected {period}",
        )
    )

    g = gcd(m, n)
    failures = []
    for k, r in enumerate(reports):
        if period % r.length or g % (period // r.length):
            failures.append(f"orbit {k} has length {r.length}")
    checks.append(
        _result(
            "orbit lengths are (m+n)/e with e dividing gcd(m,n)", failures,
            f"lengths {sorted({r.length for r in reports})}",
        )
    )

    rt_fail: list[str] = []
    eq_fail: list[str] = []
    size_fail: list[str] = []
    formula_fail: list[str] = []
    period_fail: list[str] = []
    window_fail: list[str] = []
    n_ideals = 0
    for mask in ideal_masks(poset, cap):
        n_ideals += 1
        ideal = IdealSet(poset, mask)
        w = encode_grid(ideal)
        if decode_grid(w, m, n).mask != mask:
            rt_fail.append(f"word {w}")
        stepped = rowmotion_ideal(ideal)
        if encode_grid(stepped) != psi(w):
            eq_fail.append(f"word {w}")
        gamma = poset.maxima_mask(mask).bit_count()
        if count_10(w) != gamma:
            size_fail.append(f"word {w}: {count_10(w)} vs {gamma}")
        profile = size_profile(w)
        iterates = psi_iterates(w, period)
        running = count_10(w)
        total = 0
        for i in range(1, period + 1):
            running += profile.p_values[i - 1] + profile.q_values[i - 1]
            total += running
            if running != count_10(iterates[i - 1]):
                formula_fail.append(f"word {w} step {i}")
                break
        if total != m * n:
            period_fail.append(f"word {w}: climb total {total}")
        if iterates[-1] != w:
            period_fail.append(f"word {w} does not return")
        seq0, seq1 = long_sequences(w)
        for i in range(1, period + 1):
            if zigzag(seq0.window(i), seq1.window(i)) != iterates[i - 1]:
                window_fail.append(f"word {w} window {i}")
                break
    checks.append(_result("codec round-trips", rt_fail, f"{n_ideals} ideals"))
    checks.append(
        _result("codec transports the dynamics", eq_fail, f"{n_ideals} ideals")
    )
    checks.append(
        _result("descent count equals antichain size", size_fail,
                f"{n_ideals} ideals")
    )
    checks.append(
        _result("profile formula matches iterated sizes", formula_fail,
                f"{n_ideals} words, {period} steps each")
    )
    checks.append(
        _result("size total over one period is mn", period_fail,
                f"{n_ideals} words")
    )
    checks.append(
        _result("windows rebuild every iterate", window_fail,
                f"{n_ideals} words, {period} windows each")
    )
    return poset, reports, checks


def word_iterate_rows(word: str) -> tuple[list[tuple[int, str, int, int]], bool]:
    """Rows (step, word, direct size, formula size) over one period, plus
    whether every comparison agreed and the word returned."""
    m, n = word.count("0"), word.count("1")
    period = m + n
    profile = size_profile(word)
    rows = []
    ok = True
    cur = word
    running = count_10(word)
    for i in range(1, period + 1):
        cur = psi(cur)
        running += profile.p_values[i - 1] + profile.q_values[i - 1]
        direct = count_10(cur)
        rows.append((i, cur, direct, running))
        if direct != running:
            ok = False
    if cur != word:
        ok = False
    return rows, ok


def verify_k_product(
    m: int,
    n: int,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> tuple[Poset, list, list[CheckResult]]:
    poset = k_product_poset(m, n)
    period = m + 2 * n - 1
    checks: list[CheckResult] = []

    avg_check, reports = check_constant_average(
        poset, Fraction(2 * m * n, period), cap, threads,
        "orbit averages equal 2mn/(m+2n-1)",
    )
    checks.append(avg_check)

    class_fail: list[str] = []
    type_one: list = []
    type_two: list = []
    for k, r in enumerate(reports):
        kinds = {is_full_rank(ideal) for ideal in r.ideals}
        if len(kinds) != 1:
            class_fail.append(f"orbit {k} mixes classes")
            continue
        (type_one if kinds.pop() else type_two).append((k, r))
    checks.append(
        _result("orbits never mix the two fiber classes", class_fail,
                f"{len(type_one)} full-rank orbits, {len(type_two)} others")
    )
    expected = Fraction(2 * m * n, period)
    for label, group in (
        ("full-rank orbit averages", type_one),
        ("starred orbit averages", type_two),
    ):
        failures = [
            f"orbit {k} averages {_fraction_str(r.average_size)}"
            for k, r in group
            if r.average_size != expected
        ]
        checks.append(
            _result(label, failures,
                    f"{len(group)} orbits at {_fraction_str(expected)}")
        )

    order = lcm(*(r.length for r in reports)) if reports else 1
    checks.append(
        CheckResult(
            "operator order is m+2n-1",
            order == period,
            f"order {order}, expected {period}",
        )
    )

    full_rt: list[str] = []
    full_eq: list[str] = []
    full_size: list[str] = []
    star_rt: list[str] = []
    star_dual_inv: list[str] = []
    star_eq: list[str] = []
    dual_comm: list[str] = []
    window_fail: list[str] = []
    word_period_fail: list[str] = []
    n_full = 0
    n_star = 0
    seen_words: set[str] = set()
    for mask in ideal_masks(poset, cap):
        ideal = IdealSet(poset, mask)
        stepped = rowmotion_ideal(ideal)
        if is_full_rank(ideal):
            n_full += 1
            w = encode_K_fullrank(ideal)
            if decode_K_fullrank(w, m, n).mask != mask:
                full_rt.append(f"word {w}")
            if encode_K_fullrank(stepped) != psi(w):
                full_eq.append(f"word {w}")
            gamma = poset.maxima_mask(mask).bit_count()
            if count_10(w) + epsilon_n(w) != gamma:
                full_size.append(f"word {w}: {count_10(w)}+{epsilon_n(w)} vs {gamma}")
        else:
            n_star += 1
            sw = encode_K_starred(ideal)
            mate = dual_ideal(ideal)
            if encode_K_starred(mate) != sw:
                star_dual_inv.append(f"word {sw}")
            back = decode_K_starred(sw, m, n)
            if back.mask not in (mask, mate.mask):
                star_rt.append(f"word {sw}")
            if encode_K_starred(stepped) != psi_bar(sw):
                star_eq.append(f"word {sw}")
            if rowmotion_ideal(mate).mask != dual_ideal(stepped).mask:
                dual_comm.append(f"ideal {ideal.bit_string()}")
            if sw not in seen_words:
                seen_words.add(sw)
                sizes = window_sizes_K(sw)
                direct = []
                cur = ideal
                for _ in range(period):
                    cur = rowmotion_ideal(cur)
                    direct.append(
                        poset.maxima_mask(cur.mask).bit_count()
                    )
                if sizes != direct:
                    window_fail.append(f"word {sw}")
                cur_w = sw
                for _ in range(period):
                    cur_w = psi_bar(cur_w)
                if cur_w != sw:
                    word_period_fail.append(f"word {sw}")
    checks.append(
        _result("full-rank codec round-trips", full_rt, f"{n_full} ideals")
    )
    checks.append(
        _result("full-rank codec transports the dynamics", full_eq,
                f"{n_full} ideals")
    )
    checks.append(
        _result("full-rank size rule (descents plus middle bonus)", full_size,
                f"{n_full} ideals")
    )
    checks.append(
        _result("starred encoding ignores the middle swap", star_dual_inv,
                f"{n_star} ideals")
    )
    checks.append(
        _result("starred codec round-trips to the class", star_rt,
                f"{n_star} ideals")
    )
    checks.append(
        _result("starred codec transports the dynamics", star_eq,
                f"{n_star} ideals")
    )
    checks.append(
        _result("middle swap commutes with the dynamics", dual_comm,
                f"{n_star} ideals")
    )
    checks.append(
        _result("marked-sequence windows give iterate sizes", window_fail,
                f"{len(seen_words)} class words, {period} steps each")
    )
    checks.append(
        _result("starred word returns after m+2n-1 steps", word_period_fail,
                f"{len(seen_words)} class words")
    )
    return poset, reports, checks


def verify_catalog_entry(
    entry: CatalogEntry,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> tuple[Poset, list, list[CheckResult]]:
    root_layer = entry.realize_layer()
    poset = root_layer.poset
    checks: list[CheckResult] = []
    expected = Fraction(poset.n_elements, poset.max_rank + 1)
    avg_check, reports = check_constant_average(
        poset, expected, cap, threads,
        f"orbit averages constant [{entry.name}]",
    )
    checks.append(avg_check)

    failures = []
    star = root_layer.star
    for a, b in poset.covers:
        if not poset.le(star[b], star[a]):
            failures.append(f"cover {poset.labels[a]} < {poset.labels[b]}")
    checks.append(
        _result(f"involution reverses order [{entry.name}]", failures,
                f"{len(poset.covers)} covers")
    )

    expr_poset = entry_expr_poset(entry)
    if expr_poset is not None:
        same = are_isomorphic(poset, expr_poset)
        checks.append(
            CheckResult(
                f"layer matches the combinator build [{entry.name}]",
                same,
                f"{poset.n_elements} elements each" if same
                else "posets differ",
            )
        )
    return poset, reports, checks


def verify_classical_layer(
    family: str,
    rank: int,
    pivot: int,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> tuple[Poset, list, list[CheckResult]]:
    root_layer = build_layer(family, rank, pivot)
    poset = root_layer.poset
    name = root_layer.name
    checks: list[CheckResult] = []
    expected = Fraction(poset.n_elements, poset.max_rank + 1)
    avg_check, reports = check_constant_average(
        poset, expected, cap, threads, f"orbit averages constant [{name}]"
    )
    checks.append(avg_check)
    expr = classical_layer_expr(family, rank, pivot)
    same = are_isomorphic(poset, build(expr))
    checks.append(
        CheckResult(
            f"layer matches its classical realization [{name}]",
            same,
            "isomorphic" if same else "posets differ",
        )
    )
    return poset, reports, checks

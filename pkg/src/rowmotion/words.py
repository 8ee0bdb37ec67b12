"""Binary-word codecs and word-level rowmotion dynamics.

Ideals of a two-chain product [m]x[n] correspond to lattice paths, hence to
binary words with m zeros and n ones; rowmotion becomes the block map psi.
Ideals of [m]xK(n-1) get two codecs: full-rank ideals reuse the grid word on
2n-1 columns, non-full-rank classes (up to the polarity duality) use words
with 2n ones whose n-th one is starred.  The marked long sequences expose
every iterate of the dynamics through sliding windows, and the P/Q profile
computes antichain sizes along an orbit without iterating.

Words are plain strings; positions are 1-based in all public descriptions
(storage is 0-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .constructions import grid_poset, k_product_poset
from .poset import IdealSet, InvalidSubset, Poset

# -- blocks and the basic map psi --------------------------------------------


def parse_blocks(word: str) -> list[tuple[int, int]]:
    """Alternating run lengths [(ones, zeros), ...].

    The first ones-count and the last zeros-count may be 0; all other entries
    are positive.  parse_blocks("0110") == [(0, 1), (2, 1)].
    """
    if set(word) - {"0", "1"}:
        raise ValueError(f"not a binary word: {word!r}")
    runs = [(ch, len(list(g))) for ch, g in groupby(word)]
    blocks: list[tuple[int, int]] = []
    pending_ones = 0
    if runs and runs[0][0] == "0":
        pending_ones = -1  # leading zero run: open an (0, b) block
    for ch, c in runs:
        if ch == "1":
            pending_ones = c
        else:
            blocks.append((max(pending_ones, 0), c))
            pending_ones = -1
    if pending_ones >= 0:
        blocks.append((pending_ones, 0))
    if not word:
        blocks = [(0, 0)]
    return blocks


def unparse_blocks(blocks: list[tuple[int, int]]) -> str:
    return "".join("1" * a + "0" * b for a, b in blocks)


def count_10(word: str) -> int:
    """Number of "10" factors; equals the antichain size of the decoded ideal."""
    return word.count("10")


def psi(word: str) -> str:
    """One rowmotion step on the word side.

    Every zero block shifts one slot left against the ones stream: the word
    1^{a_1}0^{b_1}...1^{a_s}0^{b_s} becomes
    0^{b_1-1}1^{a_1+1}...0^{b_i}1^{a_i}...0^{b_s+1}1^{a_s-1}; a word of a
    single block pair 1^a 0^b just swaps to 0^b 1^a.
    """
    blocks = parse_blocks(word)
    s = len(blocks)
    if s == 1:
        a, b = blocks[0]
        return "0" * b + "1" * a
    parts = []
    for j, (a, b) in enumerate(blocks):
        nb = b - 1 if j == 0 else b + 1 if j == s - 1 else b
        na = a + 1 if j == 0 else a - 1 if j == s - 1 else a
        parts.append("0" * nb + "1" * na)
    return "".join(parts)


def psi_iterates(word: str, steps: int) -> list[str]:
    """[psi(w), psi^2(w), ..., psi^steps(w)]."""
    out = []
    cur = word
    for _ in range(steps):
        cur = psi(cur)
        out.append(cur)
    return out


# -- grid codec ---------------------------------------------------------------


def _grid_shape(poset: Poset) -> tuple[int, int]:
    keys = poset.keys
    if not keys or not all(
        isinstance(k, tuple) and len(k) == 2
        and isinstance(k[0], int) and isinstance(k[1], int) for k in keys
    ):
        raise InvalidSubset("poset is not a product of two chains")
    m = max(k[0] for k in keys)
    n = max(k[1] for k in keys)
    expected = {(i, j) for i in range(1, m + 1) for j in range(1, n + 1)}
    if set(keys) != expected or poset.n_elements != m * n:
        raise InvalidSubset("poset is not a product of two chains")
    return m, n


def _fiber_word(values: list[int], n_cols: int) -> str:
    """Word of a weakly decreasing fiber profile values[0] >= ... >= values[-1]
    over n_cols columns: ones for the last fiber, a zero, ones for the gap to
    the next fiber, and so on."""
    parts = ["1" * values[-1]]
    for c in range(len(values) - 1, 0, -1):
        parts.append("0")
        parts.append("1" * (values[c - 1] - values[c]))
    parts.append("0")
    parts.append("1" * (n_cols - values[0]))
    # the final "0" belongs before the top gap only when m >= 1; values is
    # never empty here, so the loop above emitted m zeros in total
    return "".join(parts)


def _fiber_values_from_word(word: str, m: int, n_cols: int) -> list[int]:
    if word.count("0") != m or word.count("1") != n_cols:
        raise ValueError(
            f"expected {m} zeros and {n_cols} ones, got {word!r}"
        )
    values = [0] * m
    ones = 0
    zeros_seen = 0
    for ch in word:
        if ch == "1":
            ones += 1
        else:
            zeros_seen += 1
            values[m - zeros_seen] = ones
    return values


def encode_grid(ideal: IdealSet) -> str:
    """Word of an ideal of [m]x[n]: m zeros, n ones; the ones before the i-th
    zero from the left count the filled cells of row m+1-i."""
    m, n = _grid_shape(ideal.poset)
    fibers = [0] * (m + 1)
    for idx in ideal.members:
        i, j = ideal.poset.keys[idx]
        fibers[i] = max(fibers[i], j)
    return _fiber_word(fibers[1:], n)


def decode_grid(word: str, m: int, n: int) -> IdealSet:
    if set(word) - {"0", "1"}:
        raise ValueError(f"not a binary word: {word!r}")
    values = _fiber_values_from_word(word, m, n)
    poset = grid_poset(m, n)
    mask = 0
    for i in range(1, m + 1):
        for j in range(1, values[i - 1] + 1):
            mask |= 1 << poset.index_of((i, j))
    return IdealSet(poset, mask)


# -- size profile -------------------------------------------------------------


@dataclass(frozen=True)
class SizeProfile:
    """Per-step antichain-size increments along a word's orbit.

    p_values[i-1] is the gain at step i (0 or 1), q_values[i-1] the loss
    (0 or -1), for i in 1..m+n.  For words starting with 0 and ending with 1,
    the four index sets of the block form are also recorded.
    """

    m: int
    n: int
    p_values: tuple[int, ...]
    q_values: tuple[int, ...]
    k: int | None
    set_a: frozenset[int] | None
    set_b: frozenset[int] | None
    set_c: frozenset[int] | None
    set_d: frozenset[int] | None
    source: str

    def p(self, i: int) -> int:
        if not 1 <= i <= self.m + self.n:
            raise ValueError(f"index {i} outside 1..{self.m + self.n}")
        return self.p_values[i - 1]

    def q(self, i: int) -> int:
        if not 1 <= i <= self.m + self.n:
            raise ValueError(f"index {i} outside 1..{self.m + self.n}")
        return self.q_values[i - 1]


def _dash_after_flags(long_one: str) -> list[bool]:
    """For the j-th one counted from the right end of the display (j starts
    at 1), whether a '-' immediately follows it in display order."""
    flags = []
    for pos, ch in enumerate(long_one):
        if ch == "1":
            flags.append(pos + 1 < len(long_one) and long_one[pos + 1] == "-")
    flags.reverse()
    return flags


def size_profile(word: str) -> SizeProfile:
    m, n = word.count("0"), word.count("1")
    _, long_one = long_sequences(word)
    dash = _dash_after_flags(long_one.symbols)
    p_vals = tuple(int(dash[n + i - 1]) for i in range(1, m + n + 1))
    q_vals = tuple(-int(dash[i - 1]) for i in range(1, m + n + 1))

    if word.startswith("0") and word.endswith("1"):
        zero_runs = [len(list(g)) for ch, g in groupby(word) if ch == "0"]
        one_runs = [len(list(g)) for ch, g in groupby(word) if ch == "1"]
        k = len(zero_runs)
        a = []
        total = 0
        for z in zero_runs:
            total += z
            a.append(total)
        b = []
        total = 0
        for o in reversed(one_runs):
            total += o
            b.append(total)
        set_a = frozenset(x + 1 for x in a)
        set_b = frozenset(m + 1 + b[i] for i in range(k - 1))
        set_c = frozenset(b[i] + 1 for i in range(k))
        set_d = frozenset(n + 1 + a[i] for i in range(k - 1))
        p_from_sets = tuple(
            int(i in set_b or (i <= m + 1 and i not in set_a))
            for i in range(1, m + n + 1)
        )
        q_from_sets = tuple(
            -int(i in set_c or (n + 2 <= i <= n + m and i not in set_d))
            for i in range(1, m + n + 1)
        )
        if p_from_sets != p_vals or q_from_sets != q_vals:
            raise RuntimeError(
                "size profile internal mismatch between the block-set rule "
                f"and the marked sequence for {word!r}"
            )
        return SizeProfile(m, n, p_from_sets, q_from_sets, k,
                           set_a, set_b, set_c, set_d, "block-sets")
    return SizeProfile(m, n, p_vals, q_vals, None,
                       None, None, None, None, "marked-sequence")


def size_by_formula(word: str, i: int) -> int:
    """|antichain of the i-th rowmotion iterate| without iterating."""
    profile = size_profile(word)
    if not 1 <= i <= profile.m + profile.n:
        raise ValueError(f"step {i} outside 1..{profile.m + profile.n}")
    return count_10(word) + sum(
        profile.p_values[j] + profile.q_values[j] for j in range(i)
    )


# -- long sequences and windows ------------------------------------------------


@dataclass(frozen=True)
class MarkedSequence:
    """A string over {'0','-'} or {'1','-'} with sliding windows.

    kind '0' windows select own-symbol occurrences i+1..i+width numbered from
    the display left; kind '1' numbers them from the display right.  A window
    includes the flanking '-' on either side when present and is returned in
    display order.
    """

    symbols: str
    kind: str
    width: int

    def own_positions(self) -> list[int]:
        return [p for p, ch in enumerate(self.symbols) if ch == self.kind]

    def window(self, i: int) -> str:
        positions = self.own_positions()
        if self.kind == "1":
            positions.reverse()
        if i < 1 or i + self.width > len(positions):
            raise ValueError(f"window {i} out of range")
        chosen = positions[i : i + self.width]
        lo, hi = min(chosen), max(chosen)
        if lo > 0 and self.symbols[lo - 1] == "-":
            lo -= 1
        if hi + 1 < len(self.symbols) and self.symbols[hi + 1] == "-":
            hi += 1
        return self.symbols[lo : hi + 1]

    def window_count(self) -> int:
        return len(self.own_positions()) - self.width


def _runs(word: str) -> list[tuple[str, int]]:
    return [(ch, len(list(g))) for ch, g in groupby(word)]


def long_sequences(word: str) -> tuple[MarkedSequence, MarkedSequence]:
    """The two periodic marked sequences of a word.

    The zero form: the word with ones runs dashed out, then every ones run in
    reverse order contributing "0-0-...-0" with as many zeros as the run had
    ones, then the dashed word again; 2m+n zeros in total.  The ones form is
    built the same way with the roles swapped; m+2n ones, read right to left.
    """
    m, n = word.count("0"), word.count("1")
    runs = _runs(word)
    z = "".join("-" if ch == "1" else "0" * c for ch, c in runs)
    m0 = "".join(
        "0" + "-0" * (c - 1) for ch, c in reversed(runs) if ch == "1"
    )
    o = "".join("-" if ch == "0" else "1" * c for ch, c in runs)
    m1 = "".join(
        "1" + "-1" * (c - 1) for ch, c in reversed(runs) if ch == "0"
    )
    return (
        MarkedSequence(z + m0 + z, "0", m),
        MarkedSequence(o + m1 + o, "1", n),
    )


def _window_tokens(window: str, kind: str) -> tuple[bool, list[int], bool]:
    if window.count("--") or not window:
        raise ValueError(f"malformed window {window!r}")
    lead = window.startswith("-")
    trail = window.endswith("-")
    runs = [len(part) for part in window.strip("-").split("-")]
    if any(r == 0 for r in runs):
        raise ValueError(f"malformed window {window!r}")
    return lead, runs, trail


def zigzag(window0: str, window1: str) -> str:
    """Interleave a zero window and a ones window back into a word.

    Every '-' in one window stands for exactly one run of the other symbol,
    in order; the window starting with its own symbol dictates which run goes
    first.
    """
    lead0, zero_runs, trail0 = _window_tokens(window0, "0")
    lead1, one_runs, trail1 = _window_tokens(window1, "1")
    if lead0 == lead1 or trail0 == trail1:
        raise ValueError("windows do not interlock")
    if window0.count("-") != len(one_runs) or window1.count("-") != len(zero_runs):
        raise ValueError("windows do not interlock")
    first, second = (zero_runs, one_runs) if not lead0 else (one_runs, zero_runs)
    ch_first, ch_second = ("0", "1") if not lead0 else ("1", "0")
    parts = []
    for idx in range(len(first) + len(second)):
        if idx % 2 == 0:
            parts.append(ch_first * first[idx // 2])
        else:
            parts.append(ch_second * second[idx // 2])
    return "".join(parts)


# -- the two-strand product codecs ---------------------------------------------


def _k_shape(poset: Poset) -> tuple[int, int]:
    """(m, n) for a chain-times-K poset on m * 2n elements."""
    keys = poset.keys
    if not keys or not all(isinstance(k, tuple) and len(k) == 2 for k in keys):
        raise InvalidSubset("poset is not a chain product with a two-strand poset")
    firsts = {k[0] for k in keys}
    seconds = {k[1] for k in keys}
    m = len(firsts)
    if firsts != set(range(1, m + 1)):
        raise InvalidSubset("poset is not a chain product with a two-strand poset")
    if len(seconds) % 2:
        raise InvalidSubset("poset is not a chain product with a two-strand poset")
    n = len(seconds) // 2
    expect = {str(i) for i in range(1, 2 * n)} | {str(n) + "'"}
    if seconds != expect or poset.n_elements != m * 2 * n:
        raise InvalidSubset("poset is not a chain product with a two-strand poset")
    return m, n


def _k_rank(key: str, n: int) -> int:
    return n if key.endswith("'") else int(key)


def _k_fiber_levels(ideal: IdealSet) -> tuple[int, int, list[tuple[int, str | None]]]:
    """Per-fiber (level, polarity) pairs.

    A full-rank fiber of level j holds everything of rank <= j and gets
    polarity None; a fiber holding exactly one of the two middle elements gets
    level n and polarity "n" or "n'".
    """
    poset = ideal.poset
    m, n = _k_shape(poset)
    mid, mid2 = str(n), str(n) + "'"
    fibers: list[set[str]] = [set() for _ in range(m + 1)]
    for idx in ideal.members:
        c, kkey = poset.keys[idx]
        fibers[c].add(kkey)
    out = []
    for c in range(1, m + 1):
        s = fibers[c]
        has1, has2 = mid in s, mid2 in s
        if has1 != has2:
            out.append((n, mid if has1 else mid2))
        else:
            top = max((_k_rank(k, n) for k in s), default=0)
            out.append((top, None))
    return m, n, out


def is_full_rank(ideal: IdealSet) -> bool:
    """Whether every fiber of a chain-times-K ideal is a rank ideal."""
    _, _, levels = _k_fiber_levels(ideal)
    return all(pol is None for _, pol in levels)


def encode_K_fullrank(ideal: IdealSet) -> str:
    """Word in B(m, 2n-1) of a full-rank ideal, by fiber levels."""
    m, n, levels = _k_fiber_levels(ideal)
    if any(pol is not None for _, pol in levels):
        raise InvalidSubset("ideal is not full rank")
    return _fiber_word([lev for lev, _ in levels], 2 * n - 1)


def decode_K_fullrank(word: str, m: int, n: int) -> IdealSet:
    values = _fiber_values_from_word(word, m, 2 * n - 1)
    poset = k_product_poset(m, n)
    mask = 0
    for c in range(1, m + 1):
        for key in _k_level_keys(values[c - 1], n, None):
            mask |= 1 << poset.index_of((c, key))
    return IdealSet(poset, mask)


def _k_level_keys(level: int, n: int, polarity: str | None) -> list[str]:
    """Keys of the K ideal at a level of the plain (polarity None) or starred
    reading."""
    mid, mid2 = str(n), str(n) + "'"
    if polarity is not None:
        return [str(i) for i in range(1, n)] + [polarity]
    keys = [str(i) for i in range(1, min(level, n - 1) + 1)]
    if level >= n:
        keys += [mid, mid2]
        keys += [str(i) for i in range(n + 1, level + 1)]
    return keys


def epsilon_n(word: str) -> int:
    """1 when the middle one (the n-th of 2n-1) is immediately followed by 0."""
    ones = word.count("1")
    if ones % 2 == 0:
        raise ValueError("expected an odd number of ones")
    n = (ones + 1) // 2
    return _nth_one_followed_by_zero(word, n)


def _nth_one_followed_by_zero(word: str, n: int) -> int:
    seen = 0
    for pos, ch in enumerate(word):
        if ch == "1":
            seen += 1
            if seen == n:
                return int(pos + 1 < len(word) and word[pos + 1] == "0")
    raise ValueError(f"word has fewer than {n} ones")


def antichain_size_from_word_fullrank(word: str) -> int:
    """count_10 plus the doubled-middle correction."""
    return count_10(word) + epsilon_n(word)


# -- starred codec --------------------------------------------------------------


def validate_starred(sword: str) -> tuple[int, int]:
    """Check the starred-word shape and return (m, n)."""
    if set(sword) - {"0", "1", "*"}:
        raise ValueError(f"not a starred word: {sword!r}")
    if sword.count("*") != 1:
        raise ValueError("expected exactly one star")
    ones = sword.count("1")
    if ones % 2 == 0:
        raise ValueError("expected an odd number of ones")
    n = (ones + 1) // 2
    m = sword.count("0")
    star = sword.index("*")
    if sword[:star].count("1") != n - 1:
        raise ValueError(f"expected {n - 1} ones before the star")
    if star + 1 >= len(sword) or sword[star + 1] != "0":
        raise ValueError("star must be immediately followed by 0")
    return m, n


def starred_to_plain(sword: str) -> str:
    validate_starred(sword)
    return sword.replace("*", "1")


def plain_to_starred(word: str) -> str:
    """Replace the n-th of the 2n ones by a star."""
    ones = word.count("1")
    if ones == 0 or ones % 2:
        raise ValueError("expected a positive even number of ones")
    n = ones // 2
    if not _nth_one_followed_by_zero(word, n):
        raise ValueError("the middle one must be immediately followed by 0")
    seen = 0
    for pos, ch in enumerate(word):
        if ch == "1":
            seen += 1
            if seen == n:
                return word[:pos] + "*" + word[pos + 1 :]
    raise AssertionError


def encode_K_starred(ideal: IdealSet) -> str:
    """Starred word of a non-full-rank ideal; polarity is quotiented away."""
    m, n, levels = _k_fiber_levels(ideal)
    if all(pol is None for _, pol in levels):
        raise InvalidSubset("ideal is full rank")
    values = []
    for lev, pol in levels:
        if pol is not None:
            values.append(n)
        else:
            values.append(lev if lev <= n - 1 else lev + 1)
    word = _fiber_word(values, 2 * n)
    return plain_to_starred(word)


def decode_K_starred(sword: str, m: int, n: int) -> IdealSet:
    """Canonical representative of the encoded class: the unprimed middle."""
    word = starred_to_plain(sword)
    wm, wn = validate_starred(sword)
    if (wm, wn) != (m, n):
        raise ValueError(f"word shape is (m={wm}, n={wn}), expected ({m}, {n})")
    values = _fiber_values_from_word(word, m, 2 * n)
    poset = k_product_poset(m, n)
    mid = str(n)
    mask = 0
    for c in range(1, m + 1):
        v = values[c - 1]
        if v == n:
            keys = _k_level_keys(n, n, mid)
        elif v < n:
            keys = _k_level_keys(v, n, None)
        else:
            keys = _k_level_keys(v - 1, n, None)
        for key in keys:
            mask |= 1 << poset.index_of((c, key))
    return IdealSet(poset, mask)


def dual_ideal(ideal: IdealSet) -> IdealSet:
    """Swap the two middle elements in every fiber."""
    poset = ideal.poset
    _, n = _k_shape(poset)
    mid, mid2 = str(n), str(n) + "'"
    mask = 0
    for idx in ideal.members:
        c, kkey = poset.keys[idx]
        if kkey == mid:
            kkey = mid2
        elif kkey == mid2:
            kkey = mid
        mask |= 1 << poset.index_of((c, kkey))
    return IdealSet(poset, mask)


# -- the starred dynamics ---------------------------------------------------------


def _psi_bar_cases(word: str, n: int) -> str:
    """Five-case table on the plain form of a starred word."""
    blocks = parse_blocks(word)
    s = len(blocks)
    if s < 2:
        raise ValueError("starred words have at least two block pairs")
    total = 0
    i = 0
    for j, (a, _) in enumerate(blocks, start=1):
        total += a
        if total == n:
            i = j
            break
    if not 1 <= i <= s - 1:
        raise ValueError("no block boundary at the middle one")
    out = list(blocks)
    a_i = blocks[i - 1][0]
    if i == 1 and s == 2:
        (a1, b1), (a2, b2) = blocks
        parts = ["0" * (b1 - 1) + "1" * a1, "0" * (b2 + 1) + "1" * a2]
        return "".join(parts)
    if i == 1:
        parts = ["0" * (blocks[0][1] - 1) + "1" * blocks[0][0]]
        parts.append("0" * blocks[1][1] + "1" * (blocks[1][0] + 1))
        for j in range(2, s - 1):
            parts.append("0" * blocks[j][1] + "1" * blocks[j][0])
        parts.append("0" * (blocks[-1][1] + 1) + "1" * (blocks[-1][0] - 1))
        return "".join(parts)
    if a_i == 1:
        return psi(word)
    if i < s - 1:
        parts = ["0" * (blocks[0][1] - 1) + "1" * (blocks[0][0] + 1)]
        for j in range(1, s - 1):
            a, b = blocks[j]
            if j == i - 1:
                a -= 1
            elif j == i:
                a += 1
            parts.append("0" * b + "1" * a)
        parts.append("0" * (blocks[-1][1] + 1) + "1" * (blocks[-1][0] - 1))
        return "".join(parts)
    # i == s-1 with a_i > 1: the last ones count survives intact
    parts = ["0" * (blocks[0][1] - 1) + "1" * (blocks[0][0] + 1)]
    for j in range(1, s - 1):
        a, b = blocks[j]
        if j == i - 1:
            a -= 1
        parts.append("0" * b + "1" * a)
    parts.append("0" * (blocks[-1][1] + 1) + "1" * blocks[-1][0])
    return "".join(parts)


def _starred_runs(sword: str) -> tuple[list[str], list[int]]:
    """Pairs (symbol run j, zero run after it) flattened into two lists; the
    first symbol run may be empty and the last zero run may have length 0."""
    runs: list[str] = [""]
    zeros: list[int] = []
    for is_zero, g in groupby(sword, key=lambda c: c == "0"):
        chunk = "".join(g)
        if is_zero:
            zeros.append(len(chunk))
        else:
            if len(zeros) == len(runs):
                # a zero run just closed the previous pair; open a new one
                runs.append(chunk)
            else:
                runs[-1] = chunk
    if len(zeros) < len(runs):
        zeros.append(0)
    if len(runs) != len(zeros):
        raise AssertionError(f"bad decomposition of {sword!r}")
    return runs, zeros


def _psi_bar_pattern(sword: str) -> str:
    """Structural route: shift the zero runs, feed a one in at the front,
    retire one at the back, and push through the star."""
    runs, zeros = _starred_runs(sword)
    s = len(runs)
    if s < 2:
        raise ValueError("starred words have at least two block pairs")
    new_zeros = list(zeros)
    new_zeros[0] -= 1
    new_zeros[-1] += 1
    rs = list(runs)
    rs[0] = "1" + rs[0]
    if not rs[-1] or rs[-1][-1] != "1":
        raise ValueError("the last run must end with a plain one")
    rs[-1] = rs[-1][:-1]
    q = next(j for j, r in enumerate(rs) if "*" in r)
    if rs[q] == "*":
        rs[q - 1] = rs[q - 1][:-1] + "*"
        rs[q] = "1"
    else:
        rs[q] = rs[q][:-2] + "*"
        rs[q + 1] = "1" + rs[q + 1]
    # every zero run slides in front of the symbol run it used to follow
    return "".join("0" * z + r for z, r in zip(new_zeros, rs))


def psi_bar(sword: str) -> str:
    """One rowmotion step on starred words.

    Computed twice, by the five-case block table and by the run-shift with the
    star push; the two must agree or the call fails.
    """
    m, n = validate_starred(sword)
    plain = starred_to_plain(sword)
    via_cases = plain_to_starred(_psi_bar_cases(plain, n))
    via_pattern = _psi_bar_pattern(sword)
    if via_cases != via_pattern:
        raise RuntimeError(
            f"starred-step implementations disagree on {sword!r}: "
            f"{via_cases!r} vs {via_pattern!r}"
        )
    validate_starred(via_cases)
    return via_cases


def psi_bar_iterates(sword: str, steps: int) -> list[str]:
    out = []
    cur = sword
    for _ in range(steps):
        cur = psi_bar(cur)
        out.append(cur)
    return out


def p_pattern(pattern: str) -> str:
    """The star push on a dash-separated ones pattern.

    Exchanges the star with the one right before it, then moves the one
    right after the star (if any) into the next segment.
    """
    segments = pattern.split("-")
    if any(not seg for seg in segments):
        raise ValueError(f"malformed pattern {pattern!r}")
    q = next(j for j, seg in enumerate(segments) if "*" in seg)
    if not segments[q].endswith("*"):
        raise ValueError("the star must end its segment")
    if segments[q] == "*":
        if q == 0 or not segments[q - 1]:
            raise ValueError("no one available before a bare star")
        segments[q - 1] = segments[q - 1][:-1] + "*"
        segments[q] = "1"
    else:
        segments[q] = segments[q][:-2] + "*"
        if q + 1 < len(segments):
            segments[q + 1] = "1" + segments[q + 1]
        else:
            segments.append("1")
    return "-".join(segments)


def long_zero_sequence_K(sword: str) -> MarkedSequence:
    """Marked zero sequence of a starred word.

    The word with symbol runs dashed out, then every ones-or-star run in
    reverse order (a plain run of c symbols contributing "0-0-...-0" with c
    zeros, the star run contributing "-0" repeated size-1 times), then the
    dashed word again; 2m+2n-1 zeros in total.  Windows of width m count
    "-0" occurrences to give antichain sizes along the orbit.
    """
    m, n = validate_starred(sword)
    runs = _runs_marked(sword)
    z = "".join("-" if syms != {"0"} else "0" * c for syms, c in runs)
    middle_parts = []
    for syms, c in reversed(runs):
        if syms == {"0"}:
            continue
        if "*" in syms:
            middle_parts.append("-0" * (c - 1))
        else:
            middle_parts.append("0" + "-0" * (c - 1))
    middle = "".join(middle_parts)
    return MarkedSequence(z + middle + z, "0", m)


def _runs_marked(sword: str) -> list[tuple[set, int]]:
    out = []
    for is_zero, g in groupby(sword, key=lambda c: c == "0"):
        chunk = "".join(g)
        out.append((set(chunk), len(chunk)))
    return out


def count_dash_zero(window: str) -> int:
    """Zeros immediately preceded by a dash within the window."""
    return window.count("-0")


def window_sizes_K(sword: str) -> list[int]:
    """Antichain sizes of the first m+2n-1 rowmotion iterates, read from the
    windows of the marked zero sequence."""
    m, n = validate_starred(sword)
    seq = long_zero_sequence_K(sword)
    return [count_dash_zero(seq.window(i)) for i in range(1, m + 2 * n)]

"""Independent SP 800-22 rev 1a reference for the ten battery tests.

Written directly from the NIST document with numpy/scipy; it shares no code
with the C++ implementation. Each function takes a numpy uint8 array of 0/1
bits and returns a dict with `p_values` (list) or `applicable: False`.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc, gammaincc
from scipy.stats import norm


def _na(reason):
    return {"applicable": False, "reason": reason, "p_values": []}


def _ok(*p):
    return {"applicable": True, "p_values": [float(x) for x in p]}


def frequency(bits):
    n = bits.size
    s = 2 * int(bits.sum()) - n
    return _ok(erfc(abs(s) / math.sqrt(2 * n)))


def block_frequency(bits, m=128):
    n_blocks = bits.size // m
    blocks = bits[: n_blocks * m].reshape(n_blocks, m)
    pi = blocks.sum(axis=1) / m
    chi2 = 4.0 * m * float(((pi - 0.5) ** 2).sum())
    return _ok(gammaincc(n_blocks / 2.0, chi2 / 2.0))


def runs(bits):
    n = bits.size
    pi = bits.sum() / n
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return _na("frequency prerequisite")
    v_obs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    num = abs(v_obs - 2.0 * n * pi * (1 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)
    return _ok(erfc(num / den))


def _longest_ones(block):
    padded = np.concatenate(([0], block, [0])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max()) if starts.size else 0


def longest_run(bits):
    n = bits.size
    if n < 6272:
        m, lo, pis = 8, 1, [0.2148, 0.3672, 0.2305, 0.1875]
    elif n < 750000:
        m, lo, pis = 128, 4, [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]
    else:
        m, lo, pis = 10000, 10, [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    k = len(pis) - 1
    n_blocks = n // m
    counts = np.zeros(k + 1)
    for i in range(n_blocks):
        run = _longest_ones(bits[i * m:(i + 1) * m])
        counts[min(max(run - lo, 0), k)] += 1
    expected = n_blocks * np.array(pis)
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    return _ok(gammaincc(k / 2.0, chi2 / 2.0))


def _gf2_rank(rows):
    rows = list(rows)
    rank = 0
    for bit in range(31, -1, -1):
        mask = 1 << bit
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def _full_rank_probability(r, q=32):
    prod = 1.0
    for i in range(r):
        prod *= (1 - 2.0 ** (i - q)) ** 2 / (1 - 2.0 ** (i - r))
    return 2.0 ** (r * (2 * q - r) - q * q) * prod


def rank(bits):
    n_mat = bits.size // 1024
    weights = (1 << np.arange(31, -1, -1, dtype=np.uint64))
    mats = bits[: n_mat * 1024].reshape(n_mat, 32, 32).astype(np.uint64)
    row_words = (mats * weights).sum(axis=2)
    ranks = np.array([_gf2_rank(int(x) for x in m) for m in row_words])
    f32 = int((ranks == 32).sum())
    f31 = int((ranks == 31).sum())
    p32 = _full_rank_probability(32)
    p31 = _full_rank_probability(31)
    p30 = 1 - p32 - p31
    chi2 = sum((obs - n_mat * p) ** 2 / (n_mat * p)
               for obs, p in ((f32, p32), (f31, p31), (n_mat - f32 - f31, p30)))
    return _ok(math.exp(-chi2 / 2.0))


def _psi2(bits, m):
    if m <= 0:
        return 0.0
    n = bits.size
    ext = np.concatenate((bits, bits[: m - 1])).astype(np.int64)
    idx = np.zeros(n, dtype=np.int64)
    for j in range(m):
        idx = (idx << 1) | ext[j:j + n]
    counts = np.bincount(idx, minlength=1 << m).astype(np.float64)
    return (2.0 ** m / n) * float((counts ** 2).sum()) - n


def serial(bits, m=16):
    p0, p1, p2 = _psi2(bits, m), _psi2(bits, m - 1), _psi2(bits, m - 2)
    d1 = p0 - p1
    d2 = p0 - 2 * p1 + p2
    return _ok(gammaincc(2.0 ** (m - 2), d1 / 2.0), gammaincc(2.0 ** (m - 3), d2 / 2.0))


def _ctrunc_div(a, b):
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _cusum_p(n, z):
    sqn = math.sqrt(n)
    nz = n // z
    total = 1.0
    for k in range(_ctrunc_div(-nz + 1, 4), _ctrunc_div(nz - 1, 4) + 1):
        total -= norm.cdf((4 * k + 1) * z / sqn) - norm.cdf((4 * k - 1) * z / sqn)
    for k in range(_ctrunc_div(-nz - 3, 4), _ctrunc_div(nz - 1, 4) + 1):
        total += norm.cdf((4 * k + 3) * z / sqn) - norm.cdf((4 * k + 1) * z / sqn)
    return total


def cumulative_sums(bits):
    x = 2 * bits.astype(np.int64) - 1
    forward = int(np.abs(np.cumsum(x)).max())
    backward = int(np.abs(np.cumsum(x[::-1])).max())
    return _ok(_cusum_p(bits.size, forward), _cusum_p(bits.size, backward))


def _cycles(bits):
    s = np.cumsum(2 * bits.astype(np.int64) - 1)
    zeros = np.flatnonzero(s == 0)
    j = zeros.size + (1 if s[-1] != 0 else 0)
    bounds = np.concatenate(([-1], zeros, [s.size - 1] if s[-1] != 0 else []))
    return s, bounds.astype(np.int64), j


def _excursion_gate(n, j):
    return j >= max(0.005 * math.sqrt(n), 500)


def random_excursions(bits):
    s, bounds, j = _cycles(bits)
    if not _excursion_gate(bits.size, j):
        return _na("too few cycles")
    states = [-4, -3, -2, -1, 1, 2, 3, 4]
    nu = {x: np.zeros(6) for x in states}
    for c in range(j):
        segment = s[bounds[c] + 1: bounds[c + 1] + 1]
        for x in states:
            visits = int(np.count_nonzero(segment == x))
            nu[x][min(visits, 5)] += 1
    p_values = []
    for x in states:
        a = 1.0 / (2 * abs(x))
        pis = [1 - a] + [a * a * (1 - a) ** (k - 1) for k in range(1, 5)] + [a * (1 - a) ** 4]
        expected = j * np.array(pis)
        chi2 = float(((nu[x] - expected) ** 2 / expected).sum())
        p_values.append(gammaincc(2.5, chi2 / 2.0))
    return _ok(*p_values)


def random_excursions_variant(bits):
    s, _, j = _cycles(bits)
    if not _excursion_gate(bits.size, j):
        return _na("too few cycles")
    p_values = []
    for x in list(range(-9, 0)) + list(range(1, 10)):
        xi = int(np.count_nonzero(s == x))
        p_values.append(erfc(abs(xi - j) / math.sqrt(2.0 * j * (4 * abs(x) - 2))))
    return _ok(*p_values)


def berlekamp_massey(seq):
    n = seq.size
    c = np.zeros(n + 1, dtype=np.uint8)
    b = np.zeros(n + 1, dtype=np.uint8)
    c[0] = b[0] = 1
    length, m = 0, -1
    for i in range(n):
        d = int(seq[i]) ^ int(np.bitwise_and(c[1:length + 1], seq[i - length:i][::-1]).sum() & 1)
        if d:
            t = c.copy()
            shift = i - m
            c[shift:] ^= b[: n + 1 - shift]
            if 2 * length <= i:
                length, m, b = i + 1 - length, i, t
    return length


def linear_complexity(bits, m=500):
    n_blocks = bits.size // m
    mu = m / 2.0 + (9 + (-1) ** (m + 1)) / 36.0 - (m / 3.0 + 2.0 / 9.0) / 2.0 ** m
    pis = np.array([0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833])
    counts = np.zeros(7)
    edges = [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]
    for i in range(n_blocks):
        lc = berlekamp_massey(bits[i * m:(i + 1) * m])
        t = (-1) ** m * (lc - mu) + 2.0 / 9.0
        counts[next((k for k, e in enumerate(edges) if t <= e), 6)] += 1
    expected = n_blocks * pis
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    return _ok(gammaincc(3.0, chi2 / 2.0))


BATTERY = [
    ("frequency", frequency),
    ("block_frequency", block_frequency),
    ("serial", serial),
    ("runs", runs),
    ("rank", rank),
    ("longest_run", longest_run),
    ("random_excursions", random_excursions),
    ("random_excursions_variant", random_excursions_variant),
    ("cumulative_sums", cumulative_sums),
    ("linear_complexity", linear_complexity),
]


def run_battery(bits):
    return {name: fn(bits) for name, fn in BATTERY}


def load_bit_file(path):
    raw = np.fromfile(path, dtype=np.uint8)
    n_bits = raw.size * 8
    try:
        with open(str(path) + ".meta") as fh:
            for line in fh:
                key, _, value = line.strip().partition("=")
                if key == "bits":
                    n_bits = int(value)
    except FileNotFoundError:
        pass
    return np.unpackbits(raw)[:n_bits]

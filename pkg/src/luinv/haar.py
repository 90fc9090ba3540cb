"""Monte-Carlo oracle: Haar averaging over independent local SU(2)s.

The estimator draws one SU(2) per site per sample, rotates the
amplitude table, evaluates the cumulant polynomial d, and averages
gamma * |d|^2.  It is the ground truth the closed-form invariants are
checked against; the two share nothing beyond the polynomial d itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .cumulants import cumulant_poly, parse_index
from .invariants import _qubit_amps, gamma_factor

# Samples are processed in fixed-size chunks; the RNG stream, and hence
# the estimate for a given (seed, samples), does not depend on anything else.
CHUNK = 20_000


def _rng_for(seed: int) -> np.random.Generator:
    # counter-based generator, cheap to reproduce and safe to jump
    return np.random.Generator(np.random.Philox(key=int(seed)))


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    """One Haar-random SU(2): first row uniform on the unit sphere of C^2."""
    return haar_su2_batch(rng, 1)[0]


def haar_su2_batch(rng: np.random.Generator, size: int) -> np.ndarray:
    """A (size, 2, 2) batch of independent Haar SU(2) matrices."""
    z = rng.standard_normal((size, 4))
    norm = np.sqrt((z**2).sum(axis=1))
    u = (z[:, 0] + 1j * z[:, 1]) / norm
    v = (z[:, 2] + 1j * z[:, 3]) / norm
    out = np.empty((size, 2, 2), dtype=complex)
    out[:, 0, 0] = u
    out[:, 0, 1] = v
    out[:, 1, 0] = -v.conj()
    out[:, 1, 1] = u.conj()
    return out


def _rotate_batch(amps: np.ndarray, site: int, n: int, gs: np.ndarray) -> np.ndarray:
    """Apply per-sample 2x2 matrices at one site of a (samples, 2**n) batch."""
    b = amps.shape[0]
    left = 2 ** (site - 1)
    right = 2 ** (n - site)
    a = amps.reshape(b, left, 2, right)
    return np.einsum("sjk,slkr->sljr", gs, a).reshape(b, 2**n)


@dataclass(frozen=True)
class TwirlEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


def twirl_estimate(state, index, samples: int = 100_000, seed: int = 0) -> TwirlEstimate:
    """Monte-Carlo estimate of I_index by explicit Haar twirling.

    Requires theta >= 2 (the norm index needs no averaging).  Identical
    (seed, samples) give bit-identical results on one platform.
    """
    bits = parse_index(index)
    n = len(bits)
    theta = sum(bits)
    if theta < 2:
        raise ValueError("twirl oracle is defined for indices with theta >= 2")
    if samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    amps = _qubit_amps(state, n)
    d = cumulant_poly(bits)
    gamma = gamma_factor(n, theta)
    rng = _rng_for(seed)
    vals = np.empty(samples)
    done = 0
    while done < samples:
        b = min(CHUNK, samples - done)
        rotated = np.broadcast_to(amps, (b, amps.size)).copy()
        for site in range(1, n + 1):
            rotated = _rotate_batch(rotated, site, n, haar_su2_batch(rng, b))
        vals[done : done + b] = np.abs(d.evaluate_batch(rotated)) ** 2
        done += b
    mean = gamma * float(vals.mean())
    sem = gamma * float(vals.std(ddof=1)) / sqrt(samples)
    return TwirlEstimate(mean=mean, std_error=sem, samples=samples, seed=int(seed))


def moment_battery(samples: int = 100_000, seed: int = 0, max_total: int = 6):
    """Estimate all SU(2) entry moments E[u^a ubar^b v^c vbar^e] up to
    total degree max_total, against the exact Schur values.

    The exact moment is p!q!/(p+q+1)! when a = b = p and c = e = q, and
    zero otherwise.  Returns rows (a, b, c, e, estimate, expected,
    std_error).
    """
    gs = haar_su2_batch(_rng_for(seed), samples)
    u, v = gs[:, 0, 0], gs[:, 0, 1]
    pows = {}
    for name, arr in (("u", u), ("ub", u.conj()), ("v", v), ("vb", v.conj())):
        p = np.ones_like(u)
        table = [p]
        for _ in range(max_total):
            p = p * arr
            table.append(p)
        pows[name] = table
    rows = []
    for a in range(max_total + 1):
        for bb in range(max_total + 1 - a):
            for c in range(max_total + 1 - a - bb):
                for e in range(max_total + 1 - a - bb - c):
                    mono = pows["u"][a] * pows["ub"][bb] * pows["v"][c] * pows["vb"][e]
                    est = complex(mono.mean())
                    if a == bb and c == e:
                        expected = 1.0 / ((a + c + 1) * comb(a + c, a))
                    else:
                        expected = 0.0
                    se = float(
                        np.sqrt(mono.real.var(ddof=1) + mono.imag.var(ddof=1))
                    ) / sqrt(samples)
                    rows.append((a, bb, c, e, est, expected, se))
    return rows

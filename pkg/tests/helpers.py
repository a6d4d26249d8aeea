"""Random domain generators shared by the unit and acceptance tests."""
import math

import numpy as np

from conekrahn.geometry import RadialGraphDomain
from conekrahn.rearrange import SlabDomain


def smooth(rng, terms=3, amp=0.3):
    """Random trigonometric polynomial on [0, 1] bounded by ``amp`` in size."""
    c = rng.uniform(-1, 1, terms) * amp / terms
    ph = rng.uniform(0, 2 * math.pi, terms)

    def f(*x):
        s = sum(x)
        return sum(ck * np.cos((k + 1) * math.pi * s + p) for k, (ck, p) in enumerate(zip(c, ph)))

    return f


def random_slab(rng, n, size=12):
    """One to three disjoint intervals per line, same count on every line."""
    count = int(rng.integers(1, 4))
    shifts = [smooth(rng, amp=0.2) for _ in range(count)]
    halves = [smooth(rng, amp=0.1) for _ in range(count)]
    base = [np.linspace(-1, 1, size) for _ in range(n - 2)] + [np.linspace(0.05, 1.5, size)]

    def line(*xbar):
        xs = [x / 3 for x in xbar]
        out = []
        for k in range(count):
            c = 1.2 * k + float(shifts[k](*xs))
            h = 0.35 + float(halves[k](*xs))
            out.append((c - h, c + h))
        return out

    return SlabDomain.from_function(n, base, line)


def random_profile(rng, geom, amp=0.3, terms=4, samples=65):
    """Positive radial-graph profile of the form 1 + bounded smooth perturbation."""
    ext = geom.link.extent
    f = smooth(rng, terms, amp)
    scale = float(rng.uniform(0.5, 2.0))
    return RadialGraphDomain.from_function(geom, lambda t: scale * (1 + f(t / ext)), samples)


def perturbed_profile(rng, geom, oscillation, target_volume, modes=4, samples=129):
    """Cosine-series profile with the given relative oscillation, rescaled to a weighted volume.

    Pure cosine modes keep R'(0) = 0, so n = 3 profiles stay smooth on the axis.
    """
    from conekrahn.geometry import weighted_volume

    ext = geom.link.extent
    c = rng.uniform(-1, 1, modes) / np.arange(1, modes + 1)
    dense = np.linspace(0, 1, 4001)
    raw = lambda s: sum(ck * np.cos((k + 1) * math.pi * s) for k, ck in enumerate(c))
    lo, hi = raw(dense).min(), raw(dense).max()
    unit = lambda s: 2 * (raw(s) - lo) / (hi - lo) - 1
    d = RadialGraphDomain.from_function(geom, lambda t: 1 + oscillation * unit(t / ext), samples)
    s = (target_volume / weighted_volume(d)) ** (1 / (2 * geom.a + 2))
    return d.scaled(s)

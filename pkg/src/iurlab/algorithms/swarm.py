"""Particle swarms: the plain global-best update and the standardized
ring-topology constricted variant.

Per generation each particle compares its new value with its personal best
(one CompareWithBest each); the plain swarm additionally consumes the
identity of the swarm-wide best (GlobalBestOfSwarm), the ring variant the
best-of-three choice of every neighbourhood (RingBestOfThree each).
"""

import math

import numpy as np

from iurlab.core import CompareWithBest, GlobalBestOfSwarm, RingBestOfThree
from iurlab.algorithms.base import Optimizer, register


class _SwarmBase(Optimizer):
    def __init__(self, config, problem, seed):
        super().__init__(config, problem, seed)
        self.s = config.s
        self.batch = self.s

    def initialize(self):
        self.X = self.uniform_points(self.s)
        self.V = np.zeros_like(self.X)
        self.values = self.evaluate(self.X)
        self.pbest = self.X.copy()
        self.pbest_val = self.values.copy()
        self.vmax = self.space.width()

    def _draw_coefficients(self):
        r1 = np.asarray(self.rng.uniforms(self.s * self.dim)).reshape(self.s, self.dim)
        r2 = np.asarray(self.rng.uniforms(self.s * self.dim)).reshape(self.s, self.dim)
        return r1, r2

    def _move_and_update(self, V):
        self.V = np.clip(V, -self.vmax, self.vmax)
        self.X = self.clamp(self.X + self.V)
        self.values = self.evaluate(self.X)
        improved = self.values < self.pbest_val
        self.pbest[improved] = self.X[improved]
        self.pbest_val[improved] = self.values[improved]


@register("pso")
class ParticleSwarm(_SwarmBase):
    """Global-best swarm, velocity update without inertia weight."""

    def step(self):
        cfg = self.config
        gbest = self.pbest[int(np.argmin(self.pbest_val))]
        r1, r2 = self._draw_coefficients()
        V = self.V + cfg.phi1 * r1 * (self.pbest - self.X) + cfg.phi2 * r2 * (gbest - self.X)
        self._move_and_update(V)
        compare = CompareWithBest(self.generation - 1)
        return (compare,) * self.s + (GlobalBestOfSwarm(self.s),)


@register("spso")
class StandardParticleSwarm(_SwarmBase):
    """Ring-topology swarm with the constricted velocity update."""

    def __init__(self, config, problem, seed):
        super().__init__(config, problem, seed)
        phi = config.phi1 + config.phi2
        if phi <= 4.0:
            raise ValueError("constriction needs phi1 + phi2 > 4")
        self.chi = 2.0 / abs(2.0 - phi - math.sqrt(phi * phi - 4.0 * phi))

    def _ring_best(self):
        vals = self.pbest_val
        stacked = np.stack([np.roll(vals, 1), vals, np.roll(vals, -1)])
        offset = np.argmin(stacked, axis=0) - 1  # -1, 0, +1 on the ring
        idx = (np.arange(self.s) + offset) % self.s
        return self.pbest[idx]

    def step(self):
        cfg = self.config
        lbest = self._ring_best()
        r1, r2 = self._draw_coefficients()
        V = self.chi * (
            self.V + cfg.phi1 * r1 * (self.pbest - self.X) + cfg.phi2 * r2 * (lbest - self.X)
        )
        self._move_and_update(V)
        compare = CompareWithBest(self.generation - 1)
        return (compare,) * self.s + (RingBestOfThree(),) * self.s

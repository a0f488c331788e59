"""Unit-batch random searches: blind uniform sampling and the contracting
hypercube search."""

import numpy as np

from iurlab.core import CompareWithBest
from iurlab.algorithms.base import Optimizer, register


@register("mc")
class MonteCarlo(Optimizer):
    """Uniform sampling of the box; consumes no evaluation information."""

    batch = 1

    def initialize(self):
        self.x = self.uniform_points(1)[0]
        self.evaluate(self.x.reshape(1, -1))

    def step(self):
        self.x = self.uniform_points(1)[0]
        self.evaluate(self.x.reshape(1, -1))
        return ()


@register("lj")
class LuusJaakola(Optimizer):
    """One candidate per generation, uniform in a hypercube around the
    incumbent; the radius contracts by gamma on every failed comparison."""

    batch = 1

    def initialize(self):
        self.x = self.uniform_points(1)[0]
        self.fx = float(self.evaluate(self.x.reshape(1, -1))[0])
        self.radius = self.space.width() / 2.0

    def step(self):
        u = np.asarray(self.rng.uniforms(self.dim))
        y = self.clamp(self.x + self.radius * (2.0 * u - 1.0))
        fy = float(self.evaluate(y.reshape(1, -1))[0])
        if fy < self.fx:
            self.x, self.fx = y, fy
        else:
            self.radius = self.radius * self.config.gamma
        return (CompareWithBest(self.generation - 1),)

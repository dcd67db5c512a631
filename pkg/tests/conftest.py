"""Shared helpers: small random instances for cross-checking solvers."""

import random

from binlab.problem_model import constraint, Problem
from binlab.tree_core import generate


def random_tree(rng, max_nodes, cap=None):
    n = rng.randint(2, max_nodes)
    return generate("random", n, seed=rng.randrange(2**30), cap=cap)


def random_constraint(rng, degree):
    size = rng.randint(0, degree + 1)
    return constraint(degree, set(rng.sample(range(degree + 1), size)))


def random_problem(rng, max_deg):
    d = rng.randint(2, max_deg)
    delta = rng.randint(2, max_deg)
    return Problem(d, delta, random_constraint(rng, d),
                   random_constraint(rng, delta))


def make_rng(seed):
    return random.Random(seed)

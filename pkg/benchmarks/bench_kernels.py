"""Compiled kernels versus the numpy fallback.

Times every kernel on the shapes the trainer actually uses, plus a full
rollout episode through each backend. Run::

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import timeit

import numpy as np

from ftattn import kernels


def cases(n_agents=3, batch=1024, heads=4, hidden=128):
    rng = np.random.default_rng(0)
    d = 4 + 2 * n_agents
    pos, vel = rng.uniform(-1, 1, (n_agents, 2)), rng.normal(size=(n_agents, 2))
    acts = rng.integers(0, 5, n_agents)
    logits = rng.normal(size=(batch, heads, n_agents, n_agents))
    alpha = kernels.masked_softmax(logits)
    dalpha = rng.normal(size=alpha.shape)
    obs = rng.normal(size=(n_agents, d))
    w1, b1 = rng.normal(size=(n_agents, d, hidden)), rng.normal(size=(n_agents, hidden))
    w2, b2 = rng.normal(size=(n_agents, hidden, 5)), rng.normal(size=(n_agents, 5))
    return {
        "particle_step": lambda k: k.particle_step(pos, vel, acts, 0.25, 5.0, 0.1, 1.0),
        "coverage_reward": lambda k: k.coverage_reward(pos, vel),
        "nearest_to_center": lambda k: k.nearest_to_center(pos),
        "policy_logits": lambda k: k.policy_logits(obs, w1, b1, w2, b2, 0.01),
        f"masked_softmax[B={batch}]": lambda k: k.masked_softmax(logits),
        f"masked_softmax_backward[B={batch}]": lambda k: k.masked_softmax_backward(alpha, dalpha),
        f"row_entropy[B={batch}]": lambda k: k.row_entropy(alpha),
    }


def rollout_episode(k, n_agents=3, hidden=128, steps=25):
    """One episode of env stepping and policy evaluation, kernels only."""
    rng = np.random.default_rng(1)
    d = 4 + 2 * n_agents
    w1, b1 = rng.normal(size=(n_agents, d, hidden)) * 0.1, np.zeros((n_agents, hidden))
    w2, b2 = rng.normal(size=(n_agents, hidden, 5)) * 0.1, np.zeros((n_agents, 5))
    pos, vel = rng.uniform(-1, 1, (n_agents, 2)), np.zeros((n_agents, 2))
    lm = rng.uniform(-1, 1, (n_agents, 2))

    def run():
        p, v = pos, vel
        for _ in range(steps):
            obs = np.concatenate([p, v, np.broadcast_to(lm.ravel(), (n_agents, 2 * n_agents))], axis=1)
            a = np.argmax(k.policy_logits(obs, w1, b1, w2, b2, 0.01), axis=1)
            p, v = k.particle_step(p, v, a, 0.25, 5.0, 0.1, 1.0)
            k.coverage_reward(p, lm)
            k.nearest_to_center(p)

    return run


def measure(fn, repeat):
    number, _ = timeit.Timer(fn).autorange()
    best = min(timeit.Timer(fn).repeat(repeat=repeat, number=number)) / number
    return best * 1e6


def main(argv=None):
    parser = argparse.ArgumentParser(description="kernel backend benchmark")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", help="also write results here")
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    rows = []
    for name, make in cases().items():
        rows.append((name, {b: measure(lambda: make(mod), args.repeat) for b, mod in backends.items()}))
    rows.append(("rollout episode (25 steps)",
                 {b: measure(rollout_episode(mod), args.repeat) for b, mod in backends.items()}))

    names = list(backends)
    print(f"{'kernel':38s}" + "".join(f"{b + ' (us)':>16s}" for b in names) + f"{'speed-up':>10s}")
    for label, times in rows:
        speed = f"{times['python'] / times['cython']:9.1f}x" if "cython" in times else f"{'n/a':>10s}"
        print(f"{label:38s}" + "".join(f"{times[b]:16.2f}" for b in names) + speed)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({label: times for label, times in rows}, fh, indent=1)


if __name__ == "__main__":
    main()

"""Run the reducible-bound and mapping-torus checks over a parameter grid.

Writes one JSON report per case (JSON lines) and a summary table to stdout.

    python3 scripts/run_constructions.py --genera 2 3 --Ns 1 2 3 4 5 6 --out reports.jsonl
"""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field

from prymlab.constructions import verify_corollary_4_2, verify_reducible_bound
from prymlab.words import AutomorphismPair, twist_about, twist_word


@dataclass
class GridConfig:
    genera: list[int] = field(default_factory=lambda: [2, 3])
    Ns: list[int] = field(default_factory=lambda: [1, 2, 3, 5])
    random_words: int = 10
    max_word_len: int = 4
    seed: int = 0
    cap: int = 64
    out: str | None = None


def reducible_cases(cfg: GridConfig):
    for g in cfg.genera:
        phi = twist_about(g, "a1")
        for N in cfg.Ns:
            yield lambda g=g, N=N, phi=phi: verify_reducible_bound("nonsep", g, N, phi, cap=cfg.cap)
            for h in range(1, g):
                yield lambda g=g, N=N, h=h, phi=phi: verify_reducible_bound("sep", g, N, phi, h=h, cap=cfg.cap)


def torus_cases(cfg: GridConfig):
    rng = random.Random(cfg.seed)
    for g in cfg.genera:
        names = [f"{f}{i}" for i in range(1, g + 1) for f in "ab"]
        yield lambda g=g: verify_corollary_4_2(g, AutomorphismPair.identity(g))
        for _ in range(cfg.random_words):
            word = [rng.choice(["", "-"]) + rng.choice(names) for _ in range(rng.randint(1, cfg.max_word_len))]
            yield lambda g=g, word=word: verify_corollary_4_2(g, twist_word(g, word))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = GridConfig()
    p.add_argument("--genera", type=int, nargs="+", default=defaults.genera)
    p.add_argument("--Ns", type=int, nargs="+", default=defaults.Ns)
    p.add_argument("--random-words", type=int, default=defaults.random_words)
    p.add_argument("--max-word-len", type=int, default=defaults.max_word_len)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--cap", type=int, default=defaults.cap)
    p.add_argument("--out", default=None)
    cfg = GridConfig(**vars(p.parse_args()))

    lines = []
    tally = {}
    print(f"config: {json.dumps(asdict(cfg), sort_keys=True)}")
    print(f"{'case':<10} {'params':<34} {'verdict':<12} {'seconds':>8}  computed")
    for make in list(reducible_cases(cfg)) + list(torus_cases(cfg)):
        start = time.perf_counter()
        rep = make()
        secs = time.perf_counter() - start
        d = rep.as_dict()
        lines.append(json.dumps(d, sort_keys=True))
        tally[rep.verdict] = tally.get(rep.verdict, 0) + 1
        params = ",".join(f"{k}={v}" for k, v in sorted(rep.params.items()))
        computed = ",".join(f"{k}={v}" for k, v in sorted(rep.computed.items()))
        print(f"{rep.construction:<10} {params:<34} {rep.verdict:<12} {secs:8.3f}  {computed}")
    print("totals: " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

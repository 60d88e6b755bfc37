"""How the finite-orbit dimension grows with the degree of a cyclic cover.

For each Z/N cover with rho(b2) an N-cycle, samples mapping classes that fix a1
(twist words in a1 and the curves of the other handles) and records the rank of
H_1 of the cover, the fo dimension of the lifted action, its fixed dimension and
the power at which the two agree. The reducible bound predicts fo >= N.

    python3 scripts/fo_growth.py --g 2 --max-N 8 --samples 5
"""

import argparse
import json
import random
import statistics
from dataclasses import asdict, dataclass

from prymlab.constructions import cyclic_nonseparating_cover
from prymlab.covers import minimal_invariant_power
from prymlab.homology import homology_chart, prym_matrix
from prymlab.spectra import spectral_report, stabilized_power
from prymlab.words import twist_word


@dataclass
class GrowthConfig:
    g: int = 2
    max_N: int = 6
    samples: int = 5
    word_len: int = 4
    seed: int = 1
    cap: int = 64


def curves_fixing_a1(g: int) -> list[str]:
    # a1 itself and every curve of handles 2..g are disjoint from a1
    return ["a1"] + [f"{f}{i}" for i in range(2, g + 1) for f in "ab"]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = GrowthConfig()
    for name, value in asdict(defaults).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    cfg = GrowthConfig(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    names = curves_fixing_a1(cfg.g)

    print(f"config: {json.dumps(asdict(cfg), sort_keys=True)}")
    print(f"{'N':>3} {'rank':>5} {'fo min':>7} {'fo mean':>8} {'fo max':>7} {'fixed mean':>11} {'stab max':>9} {'bound ok':>9}")
    for N in range(1, cfg.max_N + 1):
        q, _ = cyclic_nonseparating_cover(cfg.g, N)
        chart = homology_chart(q)
        fos, fixed, stab = [], [], []
        for _ in range(cfg.samples):
            word = [rng.choice(["", "-"]) + rng.choice(names) for _ in range(rng.randint(1, cfg.word_len))]
            phi = twist_word(cfg.g, word)
            k = minimal_invariant_power(q, phi, cfg.cap)
            M = prym_matrix(chart, phi, k)
            rep = spectral_report(M)
            fos.append(rep.fo_dim)
            fixed.append(rep.fixed_dim)
            stab.append(stabilized_power(M))
        print(
            f"{N:>3} {chart.rank:>5} {min(fos):>7} {statistics.mean(fos):>8.2f} {max(fos):>7}"
            f" {statistics.mean(fixed):>11.2f} {max(stab):>9} {str(min(fos) >= N):>9}"
        )


if __name__ == "__main__":
    main()

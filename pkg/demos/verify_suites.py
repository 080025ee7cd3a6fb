"""Run every closure suite over the small builtin corpus for one partition.

Run: python demos/verify_suites.py [sigma]     (default: pi:2,3)
"""

import sys

from sigmalocal import SUITES, parse_sigma, verify_theorem
from sigmalocal.closure import SuiteError
from sigmalocal.corpus import builtin_corpus


def main(text="pi:2,3"):
    sigma = parse_sigma(text)
    corpus = builtin_corpus("small")
    for suite in SUITES:
        try:
            reports = verify_theorem(suite, sigma, corpus)
        except SuiteError as e:
            print(f"[{suite}] not applicable: {e.args[0]}")
            continue
        for r in reports:
            print(f"[{suite}] {r.summary()}")


if __name__ == "__main__":
    main(*sys.argv[1:2])

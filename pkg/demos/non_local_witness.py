"""Supersolubility is not local for a partition with a block holding two primes.

The regular wreath product C_q wr C_p (q < p in one block) has a self-centralizing
base, a single block in its order, and is not supersoluble.

Run: python demos/non_local_witness.py
"""

from sigmalocal import non_sigma_local_witness, parse_sigma


def main():
    for text in ("blocks:[2,3]|rest", "blocks:[2,5]|rest", "blocks:[7]|rest"):
        w = non_sigma_local_witness(parse_sigma(text))
        print("\n".join(w.lines()))
        print()


if __name__ == "__main__":
    main()

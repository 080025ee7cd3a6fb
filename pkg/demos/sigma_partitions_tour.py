"""A tour of partitions of the primes and the group classes they define.

Run: python demos/sigma_partitions_tour.py
"""

from sigmalocal import (F_sigma, from_name, is_meta_sigma_nilpotent, is_sigma_nilpotent,
                        is_sigma_soluble, parse_sigma, sigma_of)

PARTITIONS = ["sigma1", "pi:2,3", "blocks:[2,3]|rest"]
GROUPS = ["S3", "S4", "A5", "C2wrC3", "S3xC5", "A4xC35"]


def main():
    for text in PARTITIONS:
        sigma = parse_sigma(text)
        print(f"== {text}")
        for name in GROUPS:
            G = from_name(name)
            blocks = ", ".join(sorted(str(b) for b in sigma_of(G.order(), sigma)))
            print(f"  {name:8} |G|={G.order():4}  blocks {{{blocks}}}"
                  f"  soluble={is_sigma_soluble(G, sigma)!s:5}"
                  f"  nilpotent={is_sigma_nilpotent(G, sigma)!s:5}"
                  f"  meta={is_meta_sigma_nilpotent(G, sigma)!s:5}"
                  f"  |F_sigma|={F_sigma(G, sigma).order()}")
    # coarser partitions make more groups nilpotent in the partition's sense
    S4 = from_name("S4")
    print("S4 is nilpotent for blocks:[2,3]|rest:",
          is_sigma_nilpotent(S4, parse_sigma("blocks:[2,3]|rest")))


if __name__ == "__main__":
    main()

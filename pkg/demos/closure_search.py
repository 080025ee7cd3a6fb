"""Searching for subgroups with pairwise coprime indices.

A class is closed at level t when any group with t in-class subgroups whose
indices are pairwise coprime (relative to the partition) is itself in the
class.  Abelian groups are closed at level 3 but not at level 2: S3 has the
abelian subgroups C3 and C2 with indices 2 and 3.

Run: python demos/closure_search.py
"""

from sigmalocal import builtin, check_sigma_t_closed, find_witness_tuple, from_name, sigma1
from sigmalocal.corpus import builtin_corpus


def main():
    s = sigma1()
    A = builtin("abelian")
    S3 = from_name("S3")
    w = find_witness_tuple(S3, A, 2, s)
    print("S3, level 2:", [(r.order, r.index) for r in w])
    print("S3, level 3:", find_witness_tuple(S3, A, 3, s))

    corpus = builtin_corpus("small")
    for t in (2, 3):
        rep = check_sigma_t_closed(A, s, t, corpus)
        print(rep.summary())
        for c in rep.counterexamples[:3]:
            print("   ", c["group"], [(m["order"], m["index"]) for m in c["witness"]])


if __name__ == "__main__":
    main()

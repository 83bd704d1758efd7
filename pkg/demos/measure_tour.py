#!/usr/bin/env python3
"""Tour of the coherence measures on a handful of hand-picked states.

Walks through the full measure catalog on a maximally coherent qubit, a
dephased copy, a random mixed qutrit and its entrywise conjugate, printing
the value, the real-part gap, and the conjugation-symmetrized average for
each measure.
"""

import numpy as np

import coherekit as ck


def show(label, rho):
    print(f"\n{label}")
    print(f"  diag = {np.round(np.real(np.diag(rho.data)), 6).tolist()}")
    for mid in ck.DEFAULT_MEASURES:
        value = ck.evaluate(mid, rho)
        gap = ck.real_gap(mid, rho)
        sym = ck.symmetrized_value(mid, rho)
        print(
            f"  {mid.label():<12} value {value:10.6f}   "
            f"real-part gap {gap:10.6f}   symmetrized {sym:10.6f}"
        )


def main():
    plus = ck.PureState(np.ones(2) / np.sqrt(2.0)).to_density()
    show("maximally coherent qubit (|0>+|1>)/sqrt(2)", plus)
    show("its dephased copy (classical coin)", ck.dephase(plus))

    rho = ck.random_density(3, None, seed=7)
    show("random full-rank qutrit, seed 7", rho)
    show("entrywise conjugate of the same state", ck.conjugate_state(rho))

    print("\nevery measure above agrees between the state and its conjugate,")
    print("and the real-part gap is nonnegative for all of them; both facts")
    print("are exercised at scale by `coherekit verify`.")


if __name__ == "__main__":
    main()

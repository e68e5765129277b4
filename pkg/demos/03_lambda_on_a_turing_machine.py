"""Reducing lambda terms with Turing machines.

Terms go onto tape as wire strings over {v | L . ( ) # @}; a normal-form
detector machine and a single-beta-step machine then normalize them without
any host-side term manipulation between contractions (the host only
re-renders and freshens binders).
"""

from churing.lam import App, Var, church_decode, church_encode, lam
from churing.lam_to_tm import (
    build_machine, nf_on_tm, reduce_on_tm, render_term,
)


def main():
    x, y, z = Var("x"), Var("y"), Var("z")
    t = App(lam(["x", "y"], App(y, x)), z)
    print("term:            (\\x y. y x) z")
    print("wire:           ", render_term(t))
    print("normal form?    ", nf_on_tm(t))

    r = reduce_on_tm(t)
    print("after reduction: wire", render_term(r))

    print("\nChurch arithmetic on tape: 2 applied to 3 (i.e. 3^2)")
    n = reduce_on_tm(App(church_encode(2), church_encode(3)), fuel=100)
    print("result decodes to", church_decode(n))

    br1 = build_machine("BR1")
    print(f"\nthe single-step machine has {len(br1.states)} states "
          f"over {br1.tapes} tapes")


if __name__ == "__main__":
    main()

"""Running Turing machines from the corpus.

Loads a few machines from corpus/, runs them on sample words, squeezes a
2-tape machine onto a single tape, and breadth-first-simulates a
nondeterministic guesser.
"""

from pathlib import Path

from churing.formats import parse_tm
from churing.tm import run
from churing.transform import nd_run, single_tape_segments, to_single_tape

CORPUS = Path(__file__).parent.parent / "corpus"


def main():
    onon = parse_tm((CORPUS / "onon.tm").read_text())
    print(f"machine {onon.name}: accepts words 0^n 1^n")
    for w in ["", "01", "0011", "10", "011"]:
        out = run(onon, w, fuel=10_000)
        print(f"  {w!r:10} -> {out.tag}")

    copier = parse_tm((CORPUS / "copier.tm").read_text())
    print(f"\nmachine {copier.name}: {copier.tapes} tapes, duplicates its input")
    out = run(copier, "abba", fuel=10_000)
    print("  tapes after run:", [t.content() for t in out.final.tapes])

    flat = to_single_tape(copier)
    print(f"\nto_single_tape({copier.name}): {flat.tapes} tape, "
          f"{len(flat.states)} states")
    out1 = run(flat, "abba", fuel=1_000_000)
    print("  verdict:", out1.tag)
    print("  host tapes reconstructed from the single tape:",
          single_tape_segments(copier, out1.final))

    guesser = parse_tm((CORPUS / "contains11_guesser.tm").read_text())
    print(f"\nmachine {guesser.name}: nondeterministic, guesses where '11' starts")
    for w in ["0110", "0101"]:
        print(f"  nd_run {w!r} -> {nd_run(guesser, w, max_depth=12)}")


if __name__ == "__main__":
    main()

"""A Turing machine run as pure arithmetic.

Single-tape machines over {0, 1, _} can be coded into numbers: tapes as
base-3 numerals, configurations as 2^tape * 3^state * 5^head.  The step
function, the halting time and the final output then become partial
recursive expressions, so the whole run happens inside the function model.
"""

from churing.prf import evaluate
from churing.prf_to_tm import compile_prf_to_tm, succ_machine
from churing.tm_to_prf import (
    compile_tm_to_prf, decode_tape, encode_tape, execute_expr,
    num_steps_expr, pack_config, state_indices, unpack_config,
)

FUEL = 10 ** 9


def main():
    m = succ_machine()
    idx, sink = state_indices(m)
    print(f"machine {m.name}: states numbered {idx}, halt sink = {sink}")

    w = encode_tape("11")   # the numeral 2 on tape (cell 0 is a fixed blank)
    print(f"\ntape '11' codes to {w}; "
          f"initial configuration = 2^{w} * 3^0 * 5^1 = {pack_config(w, 0, 1)}")

    steps = evaluate(num_steps_expr(m), [w], FUEL)
    print(f"arithmetic says the machine halts after {steps} steps")

    exe = execute_expr(m)
    for t in range(steps + 1):
        tape, q, p = unpack_config(evaluate(exe, [w, t], FUEL))
        print(f"  t={t}: tape={decode_tape(tape)!r:8} state={q} head={p}")

    f = compile_tm_to_prf(m)
    print("\nthe packaged expression maps n to the machine's output:")
    for n in range(4):
        print(f"  f({n}) = {evaluate(f, [n], FUEL)}")


if __name__ == "__main__":
    main()

"""Loop invariant of a small program by Kleene iteration on the sign lattice.

The loop ``x = 1; while ...: x = x * 2; x = x + 1`` is abstracted to a map
on {bot, neg, zero, pos, top}; iterating from bot reaches the invariant.
All engines agree on it, since the lattice is complete and the map monotone.
"""

from __future__ import annotations

from relfix import fix
from relfix.modelgen import standard_instance


def main() -> None:
    R, f = standard_instance("sign_analysis")
    bot = R.index["bot"]
    trace: list[str] = []
    (inv,) = R.label_set(fix.kleene_qfps(R, f, bot, trace=trace))
    print("\n".join(trace))
    print(f"invariant: x is {inv}")
    others = {
        "least_fp_mono": fix.least_fp_mono(R, f),
        "least_qfp_attractive": fix.least_qfp_attractive(R, f),
        "sm_qfp": fix.sm_qfp(R, f),
    }
    for name, p in others.items():
        print(f"{name}: {R.names[p]}")


if __name__ == "__main__":
    main()

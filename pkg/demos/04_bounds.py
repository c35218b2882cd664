# The quantitative side: parameter schedules and towers too tall to write out.

# %%
from canonical_ramsey import invert_wer, r4_bound, schedule, wer3_bound, wer_upper
from canonical_ramsey.bounds import bound_params, log_bracket

s = schedule(5, 2)
print(s.m_dprime, s.m_prime, s.delta, s.n_required)

# %% How many points does the schedule need before it certifies k2 distinct distances?
for n in (10 ** 3, 10 ** 6, 10 ** 12, 10 ** 24):
    print(n, invert_wer(2, n))

# %% The closed form needs log k2; it is bracketed by rationals, never rounded.
lo, hi = log_bracket(7)
print(float(lo), float(hi), float(wer_upper(5, 7)))

# %% Distinct areas in the plane and in space.
for e in (6, 13):
    p = bound_params((1, 1), e=e)
    print(e, p.s_e, wer3_bound(e, "k"))

# %% The 4-ary Ramsey bound on a seven-color argument list, kept symbolic.
print(r4_bound((6, 8, 8, 6, 8, 6, 2 ** 5)))

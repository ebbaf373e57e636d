"""Frozen high-precision reference values.

Generated by tools/make_goldens.py: gamma comes from adaptive quadrature of
its integral definition at 30 significant digits (the (0,1) piece under the
singularity-removing substitution t = s^(1/x)), cross-checked against
mpmath's gamma.  Regenerate with ``python tools/make_goldens.py``.
"""

LOG_GAMMA_3_7 = 1.4280723266653879
BETA_1_25__0_25 = 3.7081493546027438
BETA_0_25__0_25 = 7.4162987092054877
KAPPA_1__1_5 = 0.20735251809737327
KAPPA_2__1_5 = 0.36246015765247405
KAPPA_2__1_25 = 0.087991223184141691
LAP_POWER_ZERO_P025_A15 = -1.1387662364018292
I_PV_AM3H_X04_A15 = 1.186607793472878
REMAINDER_ND_2__1_5__2 = 0.93580573317763499
GS_POTENTIAL_0__1_5 = 1.1387662364018292
KILLED_LIMIT_1_25 = 0.84726268957914528
KILLED_LIMIT_1_5 = 0.87401918476403994

LOG_GAMMA_GRID = {
    0.05: 2.9688792010517308,
    0.1: 2.252712651734206,
    0.3: 1.0957979948180755,
    0.5: 0.57236494292470009,
    0.9: 0.066376239734742971,
    1.0: 0.0,
    1.5: -0.12078223763524522,
    2.0: 0.0,
    3.7: 1.4280723266653879,
    5.0: 3.1780538303479456,
    10.0: 12.80182748008147,
    17.3: 31.51562417817529,
    25.0: 54.784729398112319,
    37.5: 97.521775222888204,
    50.0: 144.56574394634489,
}

# Killed-form sweep quotients for the cutoff sequence, from the independent
# oracle in tools/sweep_oracle.py (identity route: limit constant plus the
# kernel-term/mass ratio, by nested mpmath tanh-sinh quadrature at 20
# significant digits).  Keyed (n, alpha).
SWEEP_QUOTIENTS = {
    (4, 1.25): 2.311128509832469,
    (16, 1.25): 1.6005433344321685,
    (64, 1.25): 1.3635092229078112,
    (256, 1.25): 1.239786958247423,
    (1024, 1.25): 1.1636572705522472,
    (4, 1.5): 2.812414879536252,
    (16, 1.5): 1.8839979351648508,
    (64, 1.5): 1.5693771890199013,
    (256, 1.5): 1.4033564781981898,
    (1024, 1.5): 1.3008189918533994,
}

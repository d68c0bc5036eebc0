"""Frozen oracle values. Regenerate with scripts/gen_oracles.py."""

GAMMA_POINTS = [
    (complex(2.5, 0.0), complex(1.3293403881791370205, 0.0)),
    (complex(0.5, 0.0), complex(1.7724538509055160273, 0.0)),
    (complex(-0.5, 0.0), complex(-3.5449077018110320546, 0.0)),
    (complex(-5.5, 0.0), complex(0.010912654781909862987, 0.0)),
    (complex(3.0, 4.0), complex(0.0052255384713692141947, -0.17254707929430018772)),
    (complex(-2.5, 1.0), complex(-0.041736625807893613745, -0.086369107369763484694)),
    (complex(10.0, 10.0), complex(1423.851941789183074, -3496.081973307944589)),
    (complex(0.10000000000000000555, -0.2000000000000000111), complex(1.5391003433867946979, 3.8384919018379110316)),
    (complex(25.0, -49.0), complex(-41366171.297590854889, 622474852.57955358105)),
    (complex(-7.2999999999999998224, 2.1000000000000000888), complex(3.0877385586493134033e-7, -1.1808315872376215527e-6)),
]
GAMMA_2_5 = complex(1.3293403881791370205, 0.0)
GAMMA_RATIO_2_OVER_2_5 = complex(0.75225277806367504926, 0.0)
ML_0_5_1_M0_3 = complex(0.73459933456765514229, 0.0)
ML_0_7_1_5_POINT = complex(1.5595027214001481832, 0.29767295466571313856)
ML_0_5_2_M1 = complex(0.55596274325131957831, 0.0)
MML_TAIL_POINT = complex(-0.32291843798248483545, -0.0026196464740422058451)
MML2_TAIL_MU2 = complex(0.14083011485985819736, 0.1185385619349239749)
MML2_TAIL_MUHALF = complex(0.082523535788038165046, 0.073870237739294028237)
BETA_2_0_5 = complex(1.3333333333333333333, 0.0)
RL_I_0_7_EXP_AT_1 = complex(2.0691224851781018406, 0.0)
RL_I_0_5_EXP_AT_1 = complex(2.2906982523032382309, 0.0)
RL_I_COMPLEX_EXP = complex(2.33708285777202233, -0.44007410135624917183)
AB_INT_POW_A1_NU05_H1 = complex(0.87612638903183752463, 0.0)
AB_INT_POW_A15_NUC_H2 = complex(2.8825118255097395355, -0.16675501895519748518)
ABR_POW_A1_NU05_H1 = complex(1.1119254865026391566, 0.0)
ABR_POW_A15_NUC_H2 = complex(2.9256523978001290088, 0.095438344686477315009)
ABR_POW_A05_NU03_H05 = complex(0.75551757431661727562, 0.0)
AB_INT_EXP_NU05_AT_1 = complex(2.5044900403811417332, 0.0)
AB_SEMIGROUP_GAP = complex(0.25112638903183752463, 0.0)
AB_NEGORDER_VS_ABR_GAP = complex(0.17611507005039544356, 0.0)

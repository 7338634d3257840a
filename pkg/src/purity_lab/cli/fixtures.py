"""Session texts printed by ``purity-lab fixtures``."""

E1 = """\
purity-lab/1
# Lambda = {(a, b) in R x R : a = b mod 2}, R the 2-adic integers, inside Gamma = R x R.
precision 8
order Lambda 2 2 unit=1,0 0,0=1,0 0,1=0,1 1,0=0,1 1,1=0,2
order Gamma 2 2 unit=1,1 idempotents=1,0;0,1 0,0=1,0 1,1=0,1
lattice Lambda Lambda regular
lattice R1 Lambda rank=1 act0=1 act1=0
lattice R2 Lambda rank=1 act0=1 act1=2
lattice Gamma = sum R1 R2
family all Lambda R1 R2
datum e1 Lambda Gamma embedding=1,1;0,2 ideal=2,0;0,1 n=1 m=1 baeckstroem
interp modp reduction Lambda
interp F rr e1
ring Z4 2 2
module M Z4 regular
formula twice Z4 E y: x1 = y*2
module L2 = reduce Lambda 2
zgspace Zg types=0 divisibles=Q1,Q2
exceptional Zg Lambda component=1
exceptional Zg R1 component=1
exceptional Zg R2 component=1
hull Zg Lambda Q1,Q2
hull Zg R1 Q1
hull Zg R2 Q2
"""

E2 = """\
purity-lab/1
# Template for a second order.  Fill in the order, the overorder and the datum,
# then uncomment.  The Ziegler part below is a toy tame space and runs as is.
precision 8
# order Lambda2 P DIM unit=... i,j=...
# order Gamma2 P DIM unit=... idempotents=... i,j=...
# lattice L Lambda2 regular
# datum e2 Lambda2 Gamma2 embedding=... n=1 m=1 baeckstroem
zgspace Zg types=2 divisibles=S0,S1
tube Zg T1 type=1 qs=A to=A from=A
tube Zg T2 type=2 qs=B,C to=B,C from=B,C
exceptional Zg P0 component=1
exceptional Zg X0 component=3
hull Zg A S0
hull Zg B S1
hull Zg C S1
hull Zg P0 S0
hull Zg X0 S1
hull Zg G1 S0
hull Zg G2 S1
zgset hat Zg A[3..] A[inf] A^ G1 P0
"""

FIXTURES = {"e1": E1, "e2": E2}

# Concrete command lines for the acceptance campaigns of latinbox
import math

out = "results"
seed = 1
threads = 4

n_small = 24
eps = 0.5
# p of the green-blue construction at n = 24, eps = 0.5: (2/(1+eps))(ln n - ln ln n)/n
p_staged = (2 / (1 + eps)) * (math.log(n_small) - math.log(math.log(n_small))) / n_small

print("=========================== Setup ===========================\n")
print("""python3 -m venv .venv
source .venv/bin/activate
pip install -e '.[test]'
""")
print("=============================================================")

print(f"""======================= Threshold sweeps =======================

latinbox --seed {seed} --trials 200 --threads {threads} --out {out}/sweep_rectangle \\
  sweep --shape rectangle -n 12 --eps {eps} --p-grid 0.05,0.1,0.15,0.2,0.25,0.3,0.4,0.5,0.7,1.0 --node-cap 1000000
latinbox --seed {seed} --trials 200 --threads {threads} --out {out}/sweep_box \\
  sweep --shape box -n 12 --eps {eps} --p-grid 0.05,0.1,0.15,0.2,0.25,0.3,0.4,0.5,0.7,1.0 --node-cap 1000000
latinbox --seed {seed} --trials 10000 --threads {threads} --out {out}/sweep_block \\
  sweep --shape cube -n 4 --finder block --p-grid 0.8,0.85,0.9,0.95,1.0

================================================================""")

print(f"""========================= Hitting times =========================

latinbox --seed {seed} --trials 200 --threads {threads} --out {out}/hitting \\
  hitting --shape box -n {n_small} --eps {eps}

================================================================""")

print(f"""======================= Staged finder sweep =======================

latinbox --seed {seed} --trials 200 --threads {threads} --out {out}/staged \\
  sweep --shape box -n {n_small} --eps {eps} --finder staged --p-grid {p_staged:.6f}

==================================================================""")

print(f"""========================= q validation =========================

latinbox --seed {seed} --trials 100000 --out {out}/qval2 qval --n0 2 --p-grid 0.3,0.6,0.9
latinbox --seed {seed} --trials 100000 --out {out}/qval3 qval --n0 3 --p-grid 0.95

================================================================""")

print(f"""====================== Packing trajectories ======================

latinbox --seed {seed} --threads {threads} --out {out}/pack100 pack --n-list 100 --seeds 10
latinbox --seed {seed} --threads {threads} --out {out}/pack_trend pack --n-list 50,200 --seeds 10
latinbox plot {out}/pack100/trajectory_n100_s0.csv --kind trajectory

==================================================================""")

print("""========================= Slow test suite =========================

pytest -m slow

==================================================================""")

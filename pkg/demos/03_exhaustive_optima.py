"""Ground truth by brute force: the best joint actions under two objectives.

The joint action space is tiny (8 actions ^ 4 networks = 4096), so the
optimum is exact.  Maximizing total throughput is not the same as being
fair: the aggregate optimum silences two networks to near-minimum power,
while the proportional-fairness optimum keeps everyone at full power.
"""

import math

from qreuse import (
    build_link_gain_table,
    load_scenario,
    optimal_aggregate,
    optimal_proportional_fairness,
)

sc = load_scenario("default")
gains = build_link_gain_table(sc.deployment, sc.path_loss)
space = sc.deployment.action_space

agg = optimal_aggregate(sc.deployment, gains, sc.radio)
pf = optimal_proportional_fairness(sc.deployment, gains, sc.radio)


def describe(ks):
    return ", ".join(
        f"WN{j + 1}:{k}(ch{space.action_from_index(k).channel}"
        f"@{space.action_from_index(k).tx_power_dbm:g}dBm)"
        for j, k in enumerate(ks))


print(f"aggregate optimum: {agg.value / 1e6:.2f} Mbps, "
      f"{len(agg.maximizers)} equivalent joint actions")
for ks, tputs in zip(agg.maximizers, agg.per_network_throughput_bps):
    per_net = "/".join(f"{v / 1e6:.0f}" for v in tputs)
    print(f"  {describe(ks)}   per-network Mbps: {per_net}")

print(f"\nproportional-fairness optimum: log-sum {pf.value:.4f}, "
      f"{len(pf.maximizers)} equivalent joint actions")
for ks, tputs in zip(pf.maximizers, pf.per_network_throughput_bps):
    per_net = "/".join(f"{v / 1e6:.0f}" for v in tputs)
    print(f"  {describe(ks)}   per-network Mbps: {per_net}")

agg_at_pf = sum(pf.per_network_throughput_bps[0])
pf_at_agg = sum(math.log(v) for v in agg.per_network_throughput_bps[0])
print(f"\nthe fair optimum reaches {agg_at_pf / agg.value:.2%} of the "
      f"aggregate optimum's total throughput")
print(f"the aggregate optimum scores {pf_at_agg:.4f} on the fairness "
      f"objective vs {pf.value:.4f} at the fair point")
print("\nsame table from the command line:  qreuse oracle default")

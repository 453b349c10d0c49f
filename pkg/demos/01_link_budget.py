"""Walk through the link budget: path loss -> SINR -> Shannon throughput.

Shows how distance, transmit power, and channel separation shape what a
single station receives in the bundled default scenario.
"""

import numpy as np

from qreuse import (
    build_link_gain_table,
    dbm_to_mw,
    interference_mw,
    load_scenario,
    max_throughput_bps,
    path_loss_db,
    shannon_throughput_bps,
    sinr_linear,
    throughput_bps,
)

sc = load_scenario("default")
space = sc.deployment.action_space

# 1. Path loss growth with distance (mean shadowing / obstacle losses).
print("path loss at the mean losses:")
for d in (1.0, np.sqrt(2), 3.0, 6.0, 10.0):
    pl = path_loss_db(d, sc.path_loss, sc.path_loss.gs_mean_db,
                      sc.path_loss.go_mean_db)
    print(f"  d = {d:6.3f} m  ->  {pl:7.2f} dB")

# 2. The frozen per-link gain table for the default deployment.
gains = build_link_gain_table(sc.deployment, sc.path_loss)
print("\nAP -> STA losses (dB), deterministic means:")
print(np.array_str(np.asarray(gains.gain_db), precision=2))

# 3. One joint action: everyone at 20 dBm, channels assigned diagonally.
joint = (7, 8, 8, 7)
print(f"\njoint action {joint} =",
      [f"ch{space.action_from_index(k).channel}"
       f"@{space.action_from_index(k).tx_power_dbm:g}dBm" for k in joint])
for j in range(1, 5):
    a = space.action_from_index(joint[j - 1])
    signal = dbm_to_mw(a.tx_power_dbm - gains.gain_db[j - 1, j - 1])
    interf = interference_mw(j, joint, gains, sc.radio, space)
    sinr = sinr_linear(signal, interf, sc.radio.noise_mw)
    tput = shannon_throughput_bps(sc.radio, sinr)
    print(f"  STA {j}: signal {signal:.3e} mW, interference {interf:.3e} mW, "
          f"SINR {10 * np.log10(sinr):5.1f} dB, throughput {tput / 1e6:6.1f} Mbps")

# 4. Same power, but both rows sharing a channel: the close pairs collide.
bad = (7, 8, 7, 8)
print(f"\njoint action {bad} (close pairs share channels):")
for j in range(1, 5):
    print(f"  STA {j}: {throughput_bps(j, bad, gains, sc.radio, space) / 1e6:6.1f} Mbps")

ceiling = max_throughput_bps(1, gains, sc.radio, space)
print(f"\ninterference-free ceiling per network: {ceiling / 1e6:.1f} Mbps")

"""One-off calibration for the acceptance-gate Monte Carlo runs.

Runs every stochastic acceptance configuration at its frozen seed and
prints the estimates the gate will assert against.  Not collected by
pytest; run manually:

    python3 tests/calibrate_sims.py
"""

import json
import time

from partial_l1.ptcore import Model
from partial_l1.simlab import SimConfig, run_trials

CONFIGS = [
    ("c10-upper-a05", dict(n=300, m=150, k=78, known_count=39,
                           model=Model.PARTIAL, trials=5000, master_seed=42)),
    ("c10-upper-a06", dict(n=200, m=120, k=52, known_count=26,
                           model=Model.PARTIAL, trials=5000, master_seed=42)),
    ("c10-hidden", dict(n=300, m=150, k=81, known_count=60,
                        model=Model.HIDDEN_PARTIAL, trials=5000, master_seed=42)),
    ("c10-lower", dict(n=200, m=80, k=52, known_count=26,
                       model=Model.PARTIAL, trials=20000, master_seed=42)),
    ("c11-above", dict(n=200, m=140, k=52, known_count=26,
                       model=Model.PARTIAL, trials=2000, master_seed=42)),
    ("c11-below", dict(n=200, m=60, k=52, known_count=26,
                       model=Model.PARTIAL, trials=2000, master_seed=42)),
]


def main():
    for name, kw in CONFIGS:
        cfg = SimConfig(**kw)
        t0 = time.time()
        est = run_trials(cfg)
        dt = time.time() - t0
        record = {
            "failures": est.failures,
            "trials": est.trials,
            "invalid": est.invalid,
            "rate_err_hat": est.rate_err_hat,
            "rate_cor_hat": est.rate_cor_hat,
            "seconds": round(dt, 1),
        }
        print(name, json.dumps(record), flush=True)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The Scenario Forge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the analytic AEB telemetry traces used by the checker tests.

Speed profile: linear ramp to the cruise speed, cruise, constant deceleration until the
end speed, hold. Times sit on a 0.05 s grid so every event coincides with a sample.
"""

import argparse
import json
import pathlib

DT = 0.05
T_END = 8.0
KMH_PER_MS = 3.6


def grid_time(i):
    return round(i * DT, 10)


def make_trace(cruise_kmh=20.0, ramp_end=2.0, brake_start=6.0, decel=6.0, end_kmh=0.0,
               collision_at=None, label="nominal"):
    # Deceleration in km/h per second; braking lasts until the end speed is reached and
    # the closing event is the first grid point at or after that instant.
    decel_kmh = decel * KMH_PER_MS
    stop_time = brake_start + (cruise_kmh - end_kmh) / decel_kmh
    brake_end = round(-(-stop_time // DT) * DT, 10)
    if abs(brake_end - DT - stop_time) < 1e-9:
        brake_end = round(brake_end - DT, 10)

    speed, brake, collision = [], [], []
    n = int(round(T_END / DT))
    for i in range(n + 1):
        t = grid_time(i)
        if t <= ramp_end:
            v = cruise_kmh * t / ramp_end
        elif t <= brake_start:
            v = cruise_kmh
        elif t < stop_time:
            v = cruise_kmh - decel_kmh * (t - brake_start)
        else:
            v = end_kmh
        speed.append([t, round(v, 9)])
        brake.append([t, decel if brake_start <= t <= brake_end + 1e-9 else 0.0])
        hit = collision_at is not None and abs(t - collision_at) < 1e-9
        collision.append([t, hit])

    return {
        "dt": DT,
        "signals": {
            "speed": {"unit": "km/h", "samples": speed},
            "brake": {"unit": "m/s^2", "samples": brake},
            "collision": {"unit": "boolean", "samples": collision},
        },
        "events": {
            "simulation_start": [0.0],
            "reached_target_speed": [ramp_end],
            "braking_start_aeb": [brake_start],
            "braking_end_aeb": [brake_end],
            "simulation_end": [T_END],
        },
        "metadata": {"source": "analytic", "variant": label},
    }


def end_speed_trace():
    # Braking is released at 6.8 s with 3 km/h left; deceleration chosen to land exactly.
    decel = (20.0 - 3.0) / 0.8 / KMH_PER_MS
    return make_trace(decel=decel, end_kmh=3.0, label="end_speed_3")


VARIANTS = {
    "nominal": lambda: make_trace(),
    "brake_4": lambda: make_trace(decel=4.0, label="brake_4"),
    "end_speed_3": end_speed_trace,
    "collision": lambda: make_trace(collision_at=6.5, label="collision"),
    "cruise_15": lambda: make_trace(cruise_kmh=15.0, ramp_end=1.5, label="cruise_15"),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent /
                                             "fixtures" / "traces"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in VARIANTS.items():
        path = out / f"trace_{name}.json"
        path.write_text(json.dumps(build(), indent=1) + "\n")
        print(path)


if __name__ == "__main__":
    main()

"""Build the klpy extension with cargo, import it, and exercise the main calls."""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(["cargo", "build", "-p", "kl-py"], cwd=ROOT, check=True)
    suffix = {"darwin": "dylib", "win32": "dll"}.get(sys.platform, "so")
    prefix = "" if sys.platform == "win32" else "lib"
    return ROOT / "target" / "debug" / f"{prefix}klpy.{suffix}"


def main() -> None:
    lib = build()
    out = Path(tempfile.mkdtemp())
    shutil.copy(lib, out / ("klpy.pyd" if sys.platform == "win32" else "klpy.so"))
    sys.path.insert(0, str(out))
    import klpy

    f = klpy.Field(7)
    assert f.log(3) == 1, f.log(3)
    v = klpy.kloosterman(3, 1, 2, 1)
    assert abs(v - 1) < 1e-9, v
    print("Kl2(1; 3) =", v)

    m = klpy.moments(1009, 1, 2, 4)
    print("Kl2 moments at q = 1009:", [round(z.real, 3) for z in m])

    g2 = klpy.RootSystem("G2")
    assert g2.h == 6
    print("G2: h =", g2.h, "V7 moments", klpy.invariant_moments("G2", "qm", 4))

    census = json.loads(klpy.census("E8", "qm"))
    assert census["predicted_minus_chi"] == 8
    wild = json.loads(klpy.wild("E8", 7))
    assert wild["swan"] == 8
    print("E8: -chi =", census["predicted_minus_chi"], "Swan =", wild["swan"])
    print("smoke test passed")


if __name__ == "__main__":
    main()

"""Base sizes of the Mathieu groups on cosets of their soluble fixture subgroups."""

import time

from basesize.base import exact_base_size, lower_bound
from basesize.catalog import BUILDERS
from basesize.subgroups import double_cosets


def main():
    for name in BUILDERS:
        if "/" not in name or not name.startswith("M"):
            continue
        gname = name.split("/")[0]
        g, h = BUILDERS[gname](), BUILDERS[name]()
        t = time.perf_counter()
        res = exact_base_size(g, h)
        kinds = ", ".join(c.kind for c in res.certificates)
        print(f"{name:22} index {g.order // h.order:6}  {res.describe():12} "
              f"[{kinds}]  {time.perf_counter() - t:.2f} s")
        if lower_bound(g.order, g.order // h.order) == 2 and res.value == 3:
            census = double_cosets(g, h)
            print(f"{'':22} double coset sizes: {census.summary()}")


if __name__ == "__main__":
    main()

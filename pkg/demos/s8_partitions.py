"""S8 acting on the 35 partitions of {1..8} into two 4-sets.

Both the element-list search and the engine give a minimal base of size 5;
the engine also prints the certificates it would write to disk.
"""

import time

from basesize.base import exact_base_size, exhaustive_base_size
from basesize.catalog import BUILDERS
from basesize.formats import serialize_certificates


def main():
    g, h = BUILDERS["S8"](), BUILDERS["S4wrS2"]()
    t = time.perf_counter()
    print(f"element listing: b = {exhaustive_base_size(g, h)}")
    res = exact_base_size(g, h)
    print(f"engine: {res.describe()}  ({time.perf_counter() - t:.2f} s)")
    print(serialize_certificates(res.certificates))


if __name__ == "__main__":
    main()

"""Run the three Q-hat reports and show which stored involution counts of
subgroups of B can be recomputed from raw class data."""

from basesize.reports import SUITES, load_data, reconstruct_cells, run_suite


def main():
    _, problems = load_data()
    print("stored values overridden by derivations:")
    for p in problems:
        print(f"  {p}")
    for suite in SUITES:
        print()
        print(run_suite(suite).render(verbose=False))
    print()
    names = ("P1,6", "P2", "P3,5", "P4", "O10-(2)", "SO7(3)", "F4(2)x2", "Fi22:2")
    for cell in reconstruct_cells(names, "B", ("2A", "2B", "2C", "2D")):
        derived = "-" if cell.derived is None else cell.derived
        print(f"{cell.subgroup:8} {cell.label}  stored {cell.stored:>12}  "
              f"derived {derived!s:>12}  {cell.status}")


if __name__ == "__main__":
    main()

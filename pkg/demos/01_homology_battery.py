"""Exact integer homology of small, well-known spaces.

Walks through the homology pipeline on spaces whose groups are known in
closed form: a circle, a hollow tetrahedron, the 7-vertex torus, and
contractible grid boxes, and ends with a bounding test with an explicit
integer witness.

Run:  python demos/01_homology_battery.py
"""

from spanmin import (Chain, Complex, boundary, build_grid_complex,
                     homology_group, is_null_homologous)


def show(name, K, top):
    groups = " ; ".join(str(homology_group(K, k)) for k in range(top + 1))
    print(f"{name:24s} {groups}")


def main():
    print("== known-space battery ==")

    circle = Complex({0: [(0,), (1,), (2,)],
                      1: [(0, 1), (0, 2), (1, 2)]},
                     coords=[(0, 0), (1, 0), (0, 1)])
    show("circle (3 edges)", circle, 1)

    tetra = Complex.from_maximal(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
        coords=[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    show("hollow tetrahedron", tetra, 2)

    torus = Complex.from_maximal(
        [(i % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
        + [(i % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)],
        coords=[(float(i), 0.0) for i in range(7)])
    show("7-vertex torus", torus, 2)

    grid = build_grid_complex(3, [2, 2, 2])
    show("solid 2x2x2 box", grid, 3)

    print()
    print("== bounding test with witness ==")
    # the boundary loop of one grid square bounds inside the filled grid
    K = build_grid_complex(2, [2, 2])
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    ids = [K.grid.vertex_at(p) for p in corners]
    loop = Chain.from_simplices(
        K, [((ids[i], ids[(i + 1) % 4]), 1) for i in range(4)])
    null, witness = is_null_homologous(loop)
    print(f"unit-square loop bounds: {null}")
    print(f"witness 2-chain: {witness}")
    print(f"boundary(witness) == loop: {boundary(witness) == loop}")


if __name__ == "__main__":
    main()

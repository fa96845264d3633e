"""Small reference quivers used by the CLI examples and the test-suite"""

from quiverdp.quiver.model import Arrow, MixedQuiver, Vertex


def example_mixed(dim: int = 2) -> MixedQuiver:
    """Two paired vertices v (plain) and w (dual) with arrows in every direction"""
    return MixedQuiver(
        vertices=(Vertex("v", dim, "1"), Vertex("w", dim, "*")),
        arrows=(
            Arrow("a1", tail="v", head="w"),
            Arrow("a2", tail="w", head="v"),
            Arrow("a3", tail="v", head="v"),
            Arrow("a4", tail="w", head="w"),
        ),
        phi=(("v", "w"),),
    )


def bilinear_forms(d: int = 1) -> MixedQuiver:
    """d bilinear forms on a plane: arrows z1..zd from V to its dual"""
    return MixedQuiver(
        vertices=(Vertex("V", 2, "1"), Vertex("V*", 2, "*")),
        arrows=tuple(Arrow(f"z{k}", tail="V", head="V*") for k in range(1, d + 1)),
        phi=(("V", "V*"),),
    )


def single_pair(dx: int = 1, dy: int = 0, dz: int = 0, n: int = 2, m: int = 2) -> MixedQuiver:
    """One first-class pair (V1, V1*) and one second-class pair (V2, V2*)

    X-arrows V2 → V1, Y-arrows V1* → V1, Z-arrows V2 → V2*.
    """
    arrows = [Arrow(f"x{k}", tail="V2", head="V1") for k in range(1, dx + 1)]
    arrows += [Arrow(f"y{k}", tail="V1*", head="V1") for k in range(1, dy + 1)]
    arrows += [Arrow(f"z{k}", tail="V2", head="V2*") for k in range(1, dz + 1)]
    return MixedQuiver(
        vertices=(
            Vertex("V1", n, "1"),
            Vertex("V1*", n, "*"),
            Vertex("V2", m, "1"),
            Vertex("V2*", m, "*"),
        ),
        arrows=tuple(arrows),
        phi=(("V1", "V1*"), ("V2", "V2*")),
    )


SAMPLES = {
    "example-mixed": example_mixed,
    "bilinear": bilinear_forms,
    "single-pair": single_pair,
}

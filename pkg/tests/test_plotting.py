from symblocks.blocks import Block, eigen_m0
from symblocks.pipeline import conjecture_suite, count_morita
from symblocks.plotting import plot_eigenvalues, plot_matrix, plot_report, plot_suite


def test_figures_are_written(tmp_path):
    paths = [
        plot_matrix([[1, 0], [1, 1]], tmp_path / "m.png", "Q", ["a", "b"], ["x", "y"]),
        plot_report(count_morita(3, 2, "M"), tmp_path / "r.png"),
        plot_suite(conjecture_suite([2, 3], 2), tmp_path / "s.png"),
        plot_eigenvalues(eigen_m0(Block(2, 2, ())), tmp_path / "e.png"),
    ]
    for p in paths:
        assert p.read_bytes()[:4] == b"\x89PNG"

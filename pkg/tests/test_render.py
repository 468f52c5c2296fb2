import pytest

from bmink.exact2d import GeometryError
from bmink.render import render_decomposition_svg
from bmink.voxel import ShapeSpec

SQUARE = ShapeSpec.box((-2, -2), (2, 2))
DISK = ShapeSpec.ball((0, 0), 1)


def test_square_disk_figure_layers():
    svg = render_decomposition_svg(SQUARE, DISK)
    assert svg.startswith("<svg")
    assert 'id="hatch"' in svg
    assert "stroke-dasharray" in svg  # erosion hole drawn dashed
    assert "boundary sum" in svg


def test_equal_pair_has_no_hole_layer():
    svg = render_decomposition_svg(SQUARE, SQUARE)
    assert "stroke-dasharray" not in svg


def test_render_deterministic_and_written(tmp_path):
    out = tmp_path / "fig.svg"
    a = render_decomposition_svg(SQUARE, DISK, str(out))
    b = render_decomposition_svg(SQUARE, DISK)
    assert a == b
    assert out.read_text() == a


def test_render_rejects_non_2d():
    with pytest.raises(GeometryError):
        render_decomposition_svg(ShapeSpec.box((0, 0, 0), (1, 1, 1)), SQUARE)


def test_render_rejects_union():
    u = ShapeSpec.union_of(ShapeSpec.box((0, 0), (1, 1)),
                           ShapeSpec.box((2, 2), (3, 3)))
    with pytest.raises(GeometryError):
        render_decomposition_svg(u, SQUARE)

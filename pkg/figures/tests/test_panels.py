import pytest

from bandfigs import FigureSpec, SchemaError, render
from bandfigs.io import FIGURE_IDS


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
def test_renders_from_synthetic_tables(figure_id, synth_data, tmp_path):
    out = tmp_path / f"{figure_id}.png"
    render(FigureSpec.from_data_dir(figure_id, synth_data, out))
    assert out.exists()
    assert out.stat().st_size > 5_000
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_rendering_is_pixel_deterministic(synth_data, tmp_path):
    for figure_id in ("fig2b", "figA-weights"):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render(FigureSpec.from_data_dir(figure_id, synth_data, a))
        render(FigureSpec.from_data_dir(figure_id, synth_data, b))
        assert a.read_bytes() == b.read_bytes()


def test_empty_table_produces_no_image(synth_data, tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    (data / "gap-sweep.csv").write_text(
        "experiment,n,j,h,depth,seed,momentum_index,quantity_name,value_real,value_imag\n"
    )
    out = tmp_path / "fig2b.png"
    with pytest.raises(SchemaError):
        render(FigureSpec.from_data_dir("fig2b", data, out))
    assert not out.exists()


def test_missing_quantity_is_descriptive(synth_data, tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    # valid schema but the wrong quantities for this panel
    (data / "gap-sweep.csv").write_text(
        "experiment,n,j,h,depth,seed,momentum_index,quantity_name,value_real,value_imag\n"
        "gap-sweep,9,0.5,1.0,,,,something_else,1.0,0.0\n"
    )
    with pytest.raises(SchemaError, match="gap_k0"):
        render(FigureSpec.from_data_dir("fig2b", data, tmp_path / "x.png"))

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from reinhardt.geometry import PolygonRealization, realize
from reinhardt.svg import SvgStyle, render_svg

NS = "{http://www.w3.org/2000/svg}"
FIG2A = (7, 6, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 4, 1, 1)


def test_regular_polygon_single_path():
    root = ET.fromstring(render_svg(realize([1] * 21)))
    assert root.tag == f"{NS}svg" and root.get("version") == "1.1"
    paths = root.findall(f".//{NS}path")
    assert len(paths) == 1
    d = paths[0].get("d")
    assert d.startswith("M ") and d.endswith(" Z") and d.count(" L ") == 20


def test_chords_layer():
    svg = render_svg(realize(FIG2A), SvgStyle(layers=("polygon", "chords", "arcs")))
    root = ET.fromstring(svg)
    assert len(root.findall(f".//{NS}g[@id='chords']/{NS}line")) == 15
    assert len(root.findall(f".//{NS}g[@id='arcs']/{NS}path")) == 15


def test_deterministic():
    rz = realize(FIG2A)
    style = SvgStyle(layers=("polygon", "chords"))
    assert render_svg(rz, style) == render_svg(realize(FIG2A), style)


def test_coordinates_inside_canvas():
    root = ET.fromstring(render_svg(realize([7, 7, 7]), SvgStyle(size=200)))
    nums = [float(x) for x in root.find(f".//{NS}path").get("d").replace("M", "").replace("L", "").replace("Z", "").split()]
    assert min(nums) >= 0 and max(nums) <= 200


def test_rejects_non_finite():
    rz = realize([7, 7, 7])
    bad = PolygonRealization(rz.parts, rz.star_vertices, rz.polygon_vertices * np.nan, rz.arc_centres, 0.0)
    with pytest.raises(ValueError):
        render_svg(bad)


def test_style_validation():
    with pytest.raises(ValueError):
        SvgStyle(layers=("polygon", "bogus"))
    with pytest.raises(ValueError):
        SvgStyle(size=0)

import numpy as np
import pytest

from fillin import FusionConfig, SlicParams
from fillin.demo import DemoObject, DemoSpec, run_demo


def test_empty_scene_is_background():
    for cfg in (FusionConfig(1, 16), FusionConfig.bi2(4), FusionConfig.reversed(2, 8)):
        for sp in ("slic", "truth"):
            res = run_demo(DemoSpec(32, 32), cfg, superpixels=sp)
            assert (res.decoded == 0).all()


def test_single_pixel_recovered_from_low():
    spec = DemoSpec(64, 64, (DemoObject("rect", 1, 1, (21, 37)),), high_stride=16)
    res = run_demo(spec, FusionConfig(1, 16), superpixels="truth")
    (ob,) = res.objects
    assert (ob.pixels, ob.recovered, ob.recovered_high_only, ob.source) == (1, 1.0, 0.0, "L")


@pytest.mark.parametrize("p", [2, 4, 8, 16])
def test_big_object_survives_from_high(p):
    # object of side p+1 placed off the high-level grid origin; high_stride = p so it
    # is also sampled by the coarse map
    spec = DemoSpec(64, 64, (DemoObject("rect", p + 1, 1, (p // 2 + 1, p // 2 + 3)),),
                    high_stride=p)
    res = run_demo(spec, FusionConfig(1, p), superpixels="truth")
    (ob,) = res.objects
    assert ob.source == "H"
    assert res.superpixels.data[ob_slice(spec)].min() == res.superpixels.data[ob_slice(spec)].max()


def ob_slice(spec):
    ob = spec.objects[0]
    r, c = ob.at
    return slice(r, r + ob.size), slice(c, c + ob.size)


def test_slic_isolated_object_survives():
    # 17x17 square holding exactly one seed of the 4x4 SLIC seed grid
    spec = DemoSpec(64, 64, (DemoObject("rect", 17, 1, (16, 16)),), high_stride=16)
    res = run_demo(spec, FusionConfig(1, 16), superpixels="slic",
                   slic=SlicParams(16, compactness=1.0), noise=0.0)
    sp = res.superpixels.data
    inside = sp[ob_slice(spec)]
    assert inside.min() == inside.max()
    assert (sp == inside[0, 0]).sum() == 17 * 17
    (ob,) = res.objects
    assert ob.source == "H"


def test_low_source_pixels_decode_like_low():
    spec = DemoSpec(64, 64, (DemoObject("rect", 1, 1), DemoObject("disk", 6, 2),
                             DemoObject("rect", 3, 3)), seed=4)
    for sp in ("slic", "truth"):
        res = run_demo(spec, FusionConfig(1, 16), superpixels=sp)
        low_cells = res.mask_h == 0
        assert np.array_equal(res.decoded[low_cells], res.decoded_low[low_cells])


def test_fillin_scale_grid():
    spec = DemoSpec(64, 64, (DemoObject("rect", 8, 1, (9, 9)),))
    res = run_demo(spec, FusionConfig(4, 16), superpixels="truth")
    assert res.decoded.shape == (16, 16)
    assert res.objects[0].pixels == 4


def test_spec_validation():
    with pytest.raises(ValueError):
        DemoObject("star", 3, 1)
    with pytest.raises(ValueError):
        DemoObject("rect", 0, 1)
    with pytest.raises(ValueError):
        DemoObject("rect", 2, 0)
    with pytest.raises(ValueError):
        DemoSpec(8, 8, (DemoObject("rect", 9, 1),))
    with pytest.raises(ValueError):
        DemoSpec(8, 8, (DemoObject("rect", 2, 1, (7, 0)),))


def test_disk_shape():
    m = DemoObject("disk", 5, 1).mask(7, 7, (1, 1))
    assert m.sum() == 21 and m[3, 3] and not m[1, 1]

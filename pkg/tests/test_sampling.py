import math

import numpy as np
import pytest

from ldop import GrayImage, NeighborSpec, directional_neighbors, neighbor_coords, sample_bilinear
from ldop.sampling import direction_offsets, directional_sample_grid

from conftest import random_image


class TestNeighborSpec:
    def test_angles(self):
        spec = NeighborSpec(radius=1, directions=8)
        assert spec.angle(1) == 0.0
        assert spec.angle(2) == pytest.approx(math.pi / 4)
        assert spec.angle(8) == pytest.approx(7 * math.pi / 4)

    def test_validation(self):
        with pytest.raises(ValueError):
            NeighborSpec(radius=0)
        with pytest.raises(ValueError):
            NeighborSpec(radius=13)
        with pytest.raises(ValueError):
            NeighborSpec(radius=2, directions=1)


class TestNeighborCoords:
    def test_axis_aligned(self):
        assert neighbor_coords(5, 5, 1, 1, 8) == (5, 6)  # 0 degrees: right
        assert neighbor_coords(5, 5, 3, 1, 8) == (4, 5)  # 90 degrees: up
        assert neighbor_coords(5, 5, 5, 1, 8) == (5, 4)
        assert neighbor_coords(5, 5, 7, 1, 8) == (6, 5)

    def test_diagonal(self):
        fx, fy = neighbor_coords(5, 5, 2, 2, 8)
        assert fx == pytest.approx(5 - math.sqrt(2))
        assert fy == pytest.approx(5 + math.sqrt(2))

    def test_point_reflection(self, rng):
        # direction k + N/2 is the reflection of direction k through the center
        for n in (4, 8, 12):
            for k in range(1, n // 2 + 1):
                for r in range(1, 5):
                    fx, fy = neighbor_coords(0, 0, k, r, n)
                    gx, gy = neighbor_coords(0, 0, k + n // 2, r, n)
                    assert fx == pytest.approx(-gx, abs=1e-9)
                    assert fy == pytest.approx(-gy, abs=1e-9)

    def test_axis_offsets_snapped_exact(self):
        for k in (1, 3, 5, 7):
            for r in range(1, 13):
                dx, dy = direction_offsets(k, r, 8)
                assert dx == int(dx) and dy == int(dy)


class TestSampleBilinear:
    def test_exact_grid_points(self, rng):
        img = random_image(rng, 6, 7)
        for x in range(1, 7):
            for y in range(1, 8):
                assert sample_bilinear(img, float(x), float(y)) == img.pixels[x - 1, y - 1]

    def test_row_midpoint(self):
        img = GrayImage(np.array([[0, 100]]))
        assert sample_bilinear(img, 1.0, 1.5) == 50.0

    def test_center_of_four(self):
        img = GrayImage(np.array([[10, 20], [30, 40]]))
        assert sample_bilinear(img, 1.5, 1.5) == 25.0  # average of the corners

    def test_out_of_bounds(self):
        img = GrayImage(np.array([[1, 2], [3, 4]]))
        with pytest.raises(ValueError):
            sample_bilinear(img, 0.5, 1.0)
        with pytest.raises(ValueError):
            sample_bilinear(img, 1.0, 2.5)


class TestDirectionalNeighbors:
    def test_constant_image(self, rng):
        img = GrayImage(np.full((9, 9), 42, dtype=np.int64))
        spec = NeighborSpec(radius=3, directions=8)
        for k in range(1, 9):
            assert directional_neighbors(img, 5, 5, k, spec).tolist() == [42, 42, 42]

    def test_horizontal_ramp(self):
        # I(x, y) = y: moving right reads the column index
        img = GrayImage(np.tile(np.arange(1, 10), (9, 1)))
        spec = NeighborSpec(radius=2, directions=8)
        assert directional_neighbors(img, 5, 5, 1, spec).tolist() == [6, 7]
        assert directional_neighbors(img, 5, 5, 3, spec).tolist() == [5, 5]

    def test_border_rejected(self, rng):
        img = random_image(rng, 9, 9)
        spec = NeighborSpec(radius=3, directions=8)
        with pytest.raises(ValueError):
            directional_neighbors(img, 3, 5, 1, spec)
        with pytest.raises(ValueError):
            directional_neighbors(img, 5, 7, 1, spec)

    def test_shift_equivariance(self, rng):
        spec = NeighborSpec(radius=2, directions=8)
        img = random_image(rng, 10, 10, lo=0, hi=200)
        shifted = GrayImage(img.pixels.astype(np.int64) + 50)
        for k in range(1, 9):
            a = directional_neighbors(img, 5, 6, k, spec)
            b = directional_neighbors(shifted, 5, 6, k, spec)
            assert np.allclose(b, a + 50, atol=1e-9)


class TestSampleGrid:
    def test_matches_scalar_path_bit_exact(self, rng):
        img = random_image(rng, 11, 13)
        pix = img.as_float()
        spec = NeighborSpec(radius=3, directions=8)
        for k in range(1, 9):
            stacks = {r: directional_sample_grid(pix, k, r, 8, margin=3) for r in (1, 2, 3)}
            for x in range(4, 9):
                for y in range(4, 11):
                    vec = directional_neighbors(img, x, y, k, spec)
                    for r in (1, 2, 3):
                        assert stacks[r][x - 4, y - 4] == vec[r - 1]

    def test_matches_absolute_coordinate_sampling(self, rng):
        # the absolute-coordinate public sampler agrees to fp precision
        img = random_image(rng, 11, 13)
        pix = img.as_float()
        for k in range(1, 9):
            for r in (1, 2, 3):
                grid = directional_sample_grid(pix, k, r, 8, margin=3)
                for x in range(4, 9):
                    for y in range(4, 11):
                        assert grid[x - 4, y - 4] == pytest.approx(
                            sample_bilinear(img, *neighbor_coords(x, y, k, r, 8)),
                            abs=1e-10,
                        )

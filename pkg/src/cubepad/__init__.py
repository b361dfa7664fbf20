"""Cube-map projection and co-projection-plane padding for 360-degree video."""

from .frames import CubeMapFrame, PlanarFrame
from .geometry import CubeGeom, Face, LayoutKind, layout_table
from .padding import complement_neighbors, extend_all, extend_face
from .projection import cubemap_to_equirect, equirect_to_cubemap, pack_layout, unpack_layout

__version__ = "0.1.0"

__all__ = [
    "CubeGeom",
    "CubeMapFrame",
    "Face",
    "LayoutKind",
    "PlanarFrame",
    "complement_neighbors",
    "cubemap_to_equirect",
    "equirect_to_cubemap",
    "extend_all",
    "extend_face",
    "layout_table",
    "pack_layout",
    "unpack_layout",
]

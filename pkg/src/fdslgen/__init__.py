"""Formula-driven synthetic image dataset generator.

Labeled image datasets rendered purely from mathematical formulas: radial
contour shapes, 2D/3D IFS fractal point renderings, and counted random
lines, with a deterministic seed tree and a parallel build pipeline.
"""

from ._version import __version__
from .camera import CameraPose, Framing, compute_framing, project_orthographic, sample_unit_sphere
from .errors import (
    BuildError,
    ClassGenerationError,
    DegenerateCloudError,
    DegenerateImageError,
    DivergentSystemError,
    EmptyRequestError,
    FdslgenError,
    InvalidGeometryError,
    InvalidParameterError,
    ManifestError,
)
from .ifs import (
    IfsConfig,
    IfsSystem,
    PointCloud,
    chaos_game,
    generate_exfractal_class,
    render_points,
    sample_ifs_system,
    viewpoints_for_instance,
)
from .linedb import LineDbSpec, build_linedb, generate_line_image
from .perlin import perlin1d, perlin1d_at
from .pipeline import (
    DatasetManifest,
    DatasetSpec,
    ExFractalConfig,
    LineDbConfig,
    RcdbConfig,
    build_dataset,
    stats_report,
    verify_dataset,
)
from .raster import Canvas, rasterize_segment, splat_points
from .rcdb import (
    RcdbParams,
    corrupt_contours,
    first_polygon,
    generate_radial_contour,
    next_polygon,
    restrict_vertex_band,
    sample_class_params,
)
from .seeds import Seed, derive_seed


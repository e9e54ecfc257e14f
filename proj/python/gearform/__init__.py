"""Gears and belt pulleys in the plane, the hyperbolic plane and the sphere."""

from ._core import (
    AntipodalError,
    Circle,
    CommandResult,
    DegenerateAngle,
    DisconnectedComponent,
    DomainError,
    GearformError,
    Geometry,
    GeometryMismatch,
    InconsistentCycle,
    InsufficientData,
    InvalidGraph,
    InvalidStep,
    MeshInvalid,
    MissingCenters,
    NoPath,
    NoTangentExists,
    OverlappingCircles,
    Point,
    ReferenceError,
    SchemaError,
    UndefinedAtZero,
    boundary_point,
    circumference,
    cmd_check,
    cmd_render,
    cmd_simulate,
    cmd_solve,
    disk_to_hyperboloid,
    distance,
    hyperboloid_to_disk,
    length_factor,
    normalize_scene,
    oracle,
    render,
    simulate,
    solve,
    tangency_residuals,
)

__all__ = [name for name in dir() if not name.startswith("_")]

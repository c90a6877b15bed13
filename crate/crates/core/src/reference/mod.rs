//! Direct pseudospectral reference solvers.

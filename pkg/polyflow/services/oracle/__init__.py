from .oracle import durand_kerner, expand_from_roots, finite_diff, real_roots_or_none

__all__ = ["durand_kerner", "expand_from_roots", "finite_diff", "real_roots_or_none"]

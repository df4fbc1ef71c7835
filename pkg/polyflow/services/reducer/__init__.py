from .reducer import (
    back_translate,
    back_translate_closed_form,
    closed_form_discrepancy,
    deflate_and_renormalize,
    polish_roots,
    precondition_shift,
    shift_roots,
    solve,
)

__all__ = [
    "back_translate",
    "back_translate_closed_form",
    "closed_form_discrepancy",
    "deflate_and_renormalize",
    "polish_roots",
    "precondition_shift",
    "shift_roots",
    "solve",
]

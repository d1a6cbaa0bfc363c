"""
For fine control of the replay, auditing and benchmarking, some settings can
be set globally.

Every time an audit or a benchmark runs, the current state of the setting is
used. Command-line flags of the `pairaudit` tool override the settings for a
single invocation.

Currently, the following settings can be defined:

* **tolerance**: float
        Absolute tolerance used when checking the amortized inequalities.
        An operation passes when `bound - (actual + delta_phi) >= -tolerance`.
        The tolerance only absorbs floating point rounding of the binary
        logarithms, as all bounds carry integer constants.

        Default: 1e-6

* **max_audit_ops**: int
        Maximum number of operations in a trace accepted by
        :func:`pairaudit.audit.audit_trace`. The potential of a heap is
        recomputed by a full traversal after every operation that touches
        it, so long traces over large heaps are slow. Longer traces raise
        :class:`pairaudit.exceptions.AuditLimitError`.

        Default: 10000

* **check_structure**: bool
        If True, the audit runs the structural invariant suite after every
        operation (heap order, link consistency, s-monotonicity, heavy
        children bound, root heavy, black node potential) and compares the
        incrementally maintained potential with a from-scratch snapshot.

        Default: False

* **n_jobs**: int
        Number of `joblib` workers used to execute benchmark cells. Each
        cell owns its forest, so cells are independent.

        Default: 1


To set/read a setting, use the function :func:`pairaudit_setting`.

.. autofunction :: pairaudit.pairaudit_setting
"""

# Global pairaudit settings dictionary
# Should be modified only through the `pairaudit_setting` function.

_PAIRAUDIT_SETTINGS = {'tolerance': 1e-6,
                       'max_audit_ops': 10000,
                       'check_structure': False,
                       'n_jobs': 1}


def pairaudit_setting(name, value=None):
    """ Gets/sets a global pairaudit setting.

    Parameters
    ----------
    name : str
        Name of the setting.
    value : Any, optional
        If not None, the setting `name` will be defined with `value`.
        If None, the current value of setting `name` will be returned.
        Default: None

    Returns
    -------
        The new value of setting `name` or its current value.

    Raises
    ------
    ValueError
        If `name` is not one of the global settings used by pairaudit or if
        the type of `value` is not compatible. Check the documentation for
        valid names and their description.
    """
    if name not in _PAIRAUDIT_SETTINGS:
        raise ValueError(f"Setting '{name}' is not valid.")

    if value is not None:
        expected_type = type(_PAIRAUDIT_SETTINGS[name])
        if type(value) is not expected_type:
            raise ValueError(f"Setting '{name}' must be '{expected_type}'")
        _PAIRAUDIT_SETTINGS[name] = value

    return _PAIRAUDIT_SETTINGS[name]

"""Shared test fixtures: response factory and the finite-difference oracle."""

from __future__ import annotations

import numpy as np

from activrisk import (
    ActivityLog,
    Band,
    Gender,
    HealthRating,
    Major,
    SurveyResponse,
    YesNo,
)
from activrisk.network import loss


def make_response(**overrides) -> SurveyResponse:
    """A valid labeled response; override any field by keyword."""
    fields = dict(
        gender=Gender.FEMALE,
        hispanic=YesNo.YES,
        major=Major.SPORT_RELATED,
        physical_health=HealthRating.GOOD,
        psych_health=HealthRating.GOOD,
        diet=HealthRating.FAIR,
        self_efficacy=Band.HIGH,
        importance=Band.MEDIUM,
        expectations=Band.HIGH,
        support=Band.MEDIUM,
        activity=ActivityLog(2, 30.0, 1, 20.0),
        label=None,
    )
    fields.update(overrides)
    return SurveyResponse(**fields)


def numeric_gradients(net, x, target, h=1e-5):
    """Central finite differences of the squared-error loss, parameter by
    parameter.  Independent of the analytic backpropagation path."""
    weight_grads = [np.zeros_like(W) for W in net.weights]
    bias_grads = [np.zeros_like(b) for b in net.biases]
    for l, W in enumerate(net.weights):
        for j in range(W.shape[0]):
            for i in range(W.shape[1]):
                original = W[j, i]
                W[j, i] = original + h
                up = loss(net, x, target)
                W[j, i] = original - h
                down = loss(net, x, target)
                W[j, i] = original
                weight_grads[l][j, i] = (up - down) / (2 * h)
        b = net.biases[l]
        for j in range(b.shape[0]):
            original = b[j]
            b[j] = original + h
            up = loss(net, x, target)
            b[j] = original - h
            down = loss(net, x, target)
            b[j] = original
            bias_grads[l][j] = (up - down) / (2 * h)
    return weight_grads, bias_grads


def max_relative_gradient_error(net, x, target, h=1e-5) -> float:
    """Worst per-coordinate relative error, analytic vs central difference."""
    from activrisk.network import gradients

    analytic_w, analytic_b = gradients(net, x, target)
    numeric_w, numeric_b = numeric_gradients(net, x, target, h=h)
    worst = 0.0
    for a, n in zip(analytic_w + analytic_b, numeric_w + numeric_b):
        a = np.asarray(a).ravel()
        n = np.asarray(n).ravel()
        denom = np.maximum(np.maximum(np.abs(a), np.abs(n)), 1e-8)
        worst = max(worst, float((np.abs(a - n) / denom).max()))
    return worst

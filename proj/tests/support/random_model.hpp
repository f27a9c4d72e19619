#pragma once

// Random but valid order models for round-trip tests.

#include <random>

#include "ordo/model.hpp"

namespace ordo::testing {

/// A category of `ctx` that admits every kind and property value.
Category catch_all(Context ctx);

/// Up to four regions per context, the last one total, with random
/// categories, comments of every kind and random ordering trees.
OrderModel random_model(std::mt19937_64& rng);

}  // namespace ordo::testing

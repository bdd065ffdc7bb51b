#pragma once

// Umbrella header for the whole library.

#include "rle/baselines.hpp"   // IWYU pragma: export
#include "rle/corpus.hpp"      // IWYU pragma: export
#include "rle/embedding.hpp"   // IWYU pragma: export
#include "rle/errors.hpp"      // IWYU pragma: export
#include "rle/eval.hpp"        // IWYU pragma: export
#include "rle/graph.hpp"       // IWYU pragma: export
#include "rle/keywords.hpp"    // IWYU pragma: export
#include "rle/log.hpp"         // IWYU pragma: export
#include "rle/matrix.hpp"      // IWYU pragma: export
#include "rle/rle_core.hpp"    // IWYU pragma: export
#include "rle/rng.hpp"         // IWYU pragma: export
#include "rle/version.hpp"     // IWYU pragma: export
#include "rle/wordvec.hpp"     // IWYU pragma: export

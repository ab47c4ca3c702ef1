#pragma once

#include "incseq/atable.hpp"
#include "incseq/combinatorics.hpp"
#include "incseq/counting.hpp"
#include "incseq/experiments.hpp"
#include "incseq/interlacing.hpp"
#include "incseq/measures.hpp"
#include "incseq/moments.hpp"
#include "incseq/permutation.hpp"
#include "incseq/report.hpp"
#include "incseq/rng.hpp"
#include "incseq/sampling.hpp"
#include "incseq/types.hpp"
#include "incseq/version.hpp"
#include "incseq/walklab.hpp"

#pragma once

// Umbrella header for the persona library: BFI-44 scoring, behavior-log
// feature extraction with a lexicon-boosted Naive Bayes emotion tagger,
// mean +/- sigma label discretization, a C4.5 gain-ratio decision-tree
// learner, stratified cross-validation, and a synthetic cohort generator.

#include "persona/common.hpp"
#include "persona/rng.hpp"
#include "persona/text.hpp"
#include "persona/inventory.hpp"
#include "persona/emotion.hpp"
#include "persona/dataset.hpp"
#include "persona/c45.hpp"
#include "persona/discretize.hpp"
#include "persona/eval.hpp"
#include "persona/record.hpp"
#include "persona/features.hpp"
#include "persona/synth.hpp"
#include "persona/io.hpp"
#include "persona/pipeline.hpp"

#pragma once

#include "c2f/baselines.hpp"
#include "c2f/core.hpp"
#include "c2f/corpus.hpp"
#include "c2f/embeddings.hpp"
#include "c2f/estimators.hpp"
#include "c2f/eval.hpp"
#include "c2f/linalg.hpp"
#include "c2f/pipeline.hpp"
#include "c2f/report.hpp"
#include "c2f/rouge.hpp"
#include "c2f/segmentation.hpp"
#include "c2f/synthetic.hpp"
#include "c2f/systems.hpp"

#define C2F_VERSION "0.1.0"

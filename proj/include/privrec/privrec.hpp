#pragma once

#include "privrec/audit.hpp"
#include "privrec/categorize.hpp"
#include "privrec/evaluation.hpp"
#include "privrec/ingest.hpp"
#include "privrec/profile.hpp"
#include "privrec/recommend.hpp"
#include "privrec/synth.hpp"

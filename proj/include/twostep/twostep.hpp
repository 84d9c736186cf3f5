#pragma once

#include "twostep/enumerate.hpp"
#include "twostep/experiments.hpp"
#include "twostep/field.hpp"
#include "twostep/forms.hpp"
#include "twostep/forms_json.hpp"
#include "twostep/grassmann.hpp"
#include "twostep/isotropy.hpp"
#include "twostep/lie_algebra.hpp"
#include "twostep/linalg.hpp"
#include "twostep/matrix.hpp"
#include "twostep/nilgroup.hpp"
#include "twostep/rng.hpp"

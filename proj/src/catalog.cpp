#include "conwaykit/catalog.hpp"

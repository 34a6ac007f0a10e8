#include <doctest.h>
// CLI end-to-end tests are added together with the tool.

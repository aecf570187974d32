// Sum an array of numbers.
const sum = (xs) => {
  return xs.reduce((a, b) => a + b, 0);
};

/** Async loader with default export reference. */
export const load = async (id) => {
  const row = await db.get(id);
  return row ?? null;
};

const shorthand = (x) => x + 1;

let assigned = function legacy(y) {
  return y - 1;
};

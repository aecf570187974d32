package store

type Cart struct {
	items []Item
	limit int
}

// Add appends an item when capacity remains.
func (c *Cart) Add(it Item) error {
	if len(c.items) >= c.limit {
		return ErrFull
	}
	c.items = append(c.items, it)
	return nil
}

// Len reports the number of items.
func (c Cart) Len() int { return len(c.items) }

type Pricer interface {
	// Price in cents; interface methods have no body.
	Price() int
}

using System.Collections.Generic;

namespace Shop.Data
{
    public class InventoryRepository
    {
        private Dictionary<string, int> levels = new Dictionary<string, int>();
        private Dictionary<string, decimal> prices = new Dictionary<string, decimal>();

        public decimal PriceOf(string sku)
        {
            return prices.ContainsKey(sku) ? prices[sku] : 0m;
        }

        public int Available(string sku)
        {
            return levels.ContainsKey(sku) ? levels[sku] : 0;
        }

        public void Decrement(string sku, int quantity)
        {
            levels[sku] = Available(sku) - quantity;
        }

        public int GetCount()
        {
            return levels.Count;
        }
    }
}

using Shop.Data;
using Shop.Data.Entities;

namespace Shop.Business
{
    public class InventoryService
    {
        private InventoryRepository stock = new InventoryRepository();

        public decimal GetUnitPrice(string sku)
        {
            return stock.PriceOf(sku);
        }

        public bool Reserve(Order order)
        {
            foreach (OrderLine line in order.Lines)
            {
                if (stock.Available(line.Sku) < line.Quantity)
                {
                    return false;
                }
            }
            foreach (OrderLine line in order.Lines)
            {
                stock.Decrement(line.Sku, line.Quantity);
            }
            return true;
        }
    }
}

using System.Collections.Generic;
using Shop.Data.Entities;

namespace Shop.Data
{
    public class CartRepository
    {
        private Dictionary<int, Cart> carts = new Dictionary<int, Cart>();

        public Cart Load(int customerId)
        {
            return carts[customerId];
        }

        public void Clear(int customerId)
        {
            carts.Remove(customerId);
        }
    }
}
